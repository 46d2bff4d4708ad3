#include "gcl/text.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gcl {

Text::Text() : data_(std::make_shared<const std::vector<Symbol>>()) {}

Text::Text(std::vector<Symbol> symbols, std::uint64_t sigma) : sigma_(sigma) {
  if (sigma == 0) throw std::invalid_argument("Text: sigma must be at least 1");
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (symbols[i] >= sigma) {
      throw std::invalid_argument("Text: symbol " + std::to_string(symbols[i]) +
                                  " at position " + std::to_string(i) +
                                  " is not below sigma=" + std::to_string(sigma));
    }
  }
  data_ = std::make_shared<const std::vector<Symbol>>(std::move(symbols));
}

Text Text::from_bytes(std::string_view bytes) {
  std::vector<Symbol> s(bytes.size());
  std::transform(bytes.begin(), bytes.end(), s.begin(),
                 [](char c) { return static_cast<Symbol>(static_cast<unsigned char>(c)); });
  return Text(std::move(s), 256);
}

Text Text::from_letters(std::string_view letters, std::uint64_t sigma) {
  std::vector<Symbol> s;
  s.reserve(letters.size());
  Symbol top = 0;
  for (char c : letters) {
    if (c < 'a' || c > 'z') throw std::invalid_argument("Text::from_letters: expected a-z");
    s.push_back(static_cast<Symbol>(c - 'a'));
    top = std::max(top, s.back());
  }
  if (sigma == 0) sigma = letters.empty() ? 1 : top + 1ULL;
  return Text(std::move(s), sigma);
}

std::string Text::to_letters() const {
  std::string out;
  out.reserve(size());
  for (Symbol s : *data_) out.push_back(s < 26 ? static_cast<char>('a' + s) : '?');
  return out;
}

Text compact_alphabet(const Text& text) {
  std::vector<Symbol> present(text.symbols().begin(), text.symbols().end());
  std::sort(present.begin(), present.end());
  present.erase(std::unique(present.begin(), present.end()), present.end());
  std::vector<Symbol> out(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    out[i] = static_cast<Symbol>(
        std::lower_bound(present.begin(), present.end(), text[i]) - present.begin());
  }
  return Text(std::move(out), std::max<std::uint64_t>(present.size(), 1));
}

Text parse_token_text(std::string_view content) {
  auto eol = content.find('\n');
  std::string_view header = content.substr(0, eol);
  while (!header.empty() && (header.back() == '\r' || header.back() == ' ')) header.remove_suffix(1);
  if (!header.starts_with("sigma=")) {
    throw std::invalid_argument("token text: missing 'sigma=<int>' header");
  }
  std::uint64_t sigma = 0;
  auto hv = header.substr(6);
  auto [hp, hec] = std::from_chars(hv.data(), hv.data() + hv.size(), sigma);
  if (hec != std::errc{} || hp != hv.data() + hv.size()) {
    throw std::invalid_argument("token text: malformed sigma header");
  }
  std::vector<Symbol> symbols;
  std::string_view body = eol == std::string_view::npos ? std::string_view{} : content.substr(eol + 1);
  const char* p = body.data();
  const char* end = body.data() + body.size();
  while (p < end) {
    while (p < end && std::isspace(static_cast<unsigned char>(*p))) ++p;
    if (p == end) break;
    std::uint64_t v = 0;
    auto [np, ec] = std::from_chars(p, end, v);
    if (ec != std::errc{} || v > 0xffffffffULL) {
      throw std::invalid_argument("token text: malformed symbol id");
    }
    symbols.push_back(static_cast<Symbol>(v));
    p = np;
  }
  return Text(std::move(symbols), sigma);
}

std::string format_token_text(const Text& text) {
  std::ostringstream os;
  os << "sigma=" << text.sigma() << '\n';
  for (std::size_t i = 0; i < text.size(); ++i) {
    os << text[i] << ((i + 1) % 32 == 0 || i + 1 == text.size() ? '\n' : ' ');
  }
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

Text load_text(const std::string& path) {
  std::string content = read_file(path);
  if (content.starts_with("sigma=")) return parse_token_text(content);
  return Text::from_bytes(content);
}

}  // namespace gcl
