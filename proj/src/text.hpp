#pragma once

// Minimal cursor for the literal grammars (field, group, element expressions).

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>

#include "fmbasis/error.hpp"

namespace fmbasis::text {

class Cursor {
 public:
  explicit Cursor(std::string_view s) : s_(s) {}

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool at_end() {
    skip_ws();
    return pos_ >= s_.size();
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  bool consume(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!consume(c)) error(std::string("expected '") + c + "'");
  }

  bool consume_word(std::string_view w) {
    skip_ws();
    if (s_.substr(pos_, w.size()) != w) return false;
    const std::size_t end = pos_ + w.size();
    if (end < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[end])) || s_[end] == '_')) return false;
    pos_ = end;
    return true;
  }

  std::string identifier() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    if (start == pos_) error("expected identifier");
    return std::string(s_.substr(start, pos_ - start));
  }

  bool at_digit() {
    skip_ws();
    return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]));
  }

  std::uint64_t integer() {
    skip_ws();
    if (!at_digit()) error("expected integer");
    std::uint64_t v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + static_cast<unsigned>(s_[pos_] - '0');
      if (v > (1ull << 40)) error("integer too large");
      ++pos_;
    }
    return v;
  }

  long long signed_integer() {
    const bool negative = consume('-');
    const auto v = static_cast<long long>(integer());
    return negative ? -v : v;
  }

  void expect_end() {
    if (!at_end()) error("unexpected trailing input");
  }

  std::size_t position() const { return pos_; }
  std::string_view source() const { return s_; }

  [[noreturn]] void error(const std::string& msg) const {
    fail(Errc::parse_error, msg + " at position " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace fmbasis::text
