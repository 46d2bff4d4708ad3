#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gcl {

using Symbol = std::uint32_t;

// Immutable symbol sequence over the integer alphabet [0, sigma).
// Copies share the underlying storage.
class Text {
 public:
  Text();
  Text(std::vector<Symbol> symbols, std::uint64_t sigma);

  // One symbol per byte, sigma = 256.
  static Text from_bytes(std::string_view bytes);

  // Letters 'a', 'b', ... mapped to 0, 1, ...; sigma defaults to the
  // largest letter present plus one.
  static Text from_letters(std::string_view letters, std::uint64_t sigma = 0);

  std::span<const Symbol> symbols() const { return {data_->data(), data_->size()}; }
  std::size_t size() const { return data_->size(); }
  bool empty() const { return data_->empty(); }
  std::uint64_t sigma() const { return sigma_; }
  Symbol operator[](std::size_t i) const { return (*data_)[i]; }

  std::vector<Symbol> to_vector() const { return *data_; }

  // Letters rendering, only meaningful for sigma <= 26.
  std::string to_letters() const;

  friend bool operator==(const Text& a, const Text& b) {
    return a.sigma_ == b.sigma_ && *a.data_ == *b.data_;
  }

 private:
  std::shared_ptr<const std::vector<Symbol>> data_;
  std::uint64_t sigma_ = 1;
};

// Renumbers the symbols that occur into 0..d-1 (order of value) and sets
// sigma = max(d, 1).
Text compact_alphabet(const Text& text);

// Token format: a header line "sigma=<int>" followed by whitespace-separated
// decimal symbol ids.
Text parse_token_text(std::string_view content);
std::string format_token_text(const Text& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

// Loads a token file if it starts with "sigma=", raw bytes otherwise.
Text load_text(const std::string& path);

}  // namespace gcl
