#include "covercert/rational.hpp"

#include <cctype>
#include <string>

#include "covercert/error.hpp"

namespace covercert {

std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

BigInt parse_integer(std::string_view text, std::string_view whole) {
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
  if (i == text.size()) throw ParseError("malformed rational '" + std::string(whole) + "'");
  for (std::size_t k = i; k < text.size(); ++k) {
    if (!std::isdigit(static_cast<unsigned char>(text[k])))
      throw ParseError("malformed rational '" + std::string(whole) + "'");
  }
  std::string digits(text[0] == '+' ? text.substr(1) : text);
  return BigInt(digits, 10);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view whole = trim(text);
  const auto slash = whole.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(whole, whole));
  BigInt num = parse_integer(trim(whole.substr(0, slash)), whole);
  BigInt den = parse_integer(trim(whole.substr(slash + 1)), whole);
  if (den <= 0) throw ParseError("non-positive denominator in '" + std::string(whole) + "'");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace covercert
