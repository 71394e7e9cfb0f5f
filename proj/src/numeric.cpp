#include "twistscl/numeric.hpp"

#include <stdexcept>

namespace twistscl {

std::string to_string(const Rational& q) {
  const BigInt den = denominator_of(q);
  if (den == 1) return numerator_of(q).str();
  return numerator_of(q).str() + "/" + den.str();
}

std::string to_decimal(const Rational& q, int digits) {
  if (digits < 0) throw std::invalid_argument("negative decimal precision");
  BigInt num = numerator_of(q);
  const BigInt den = denominator_of(q);
  const bool negative = num < 0;
  if (negative) num = -num;

  BigInt scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;

  BigInt scaled = num * scale;
  BigInt quotient = scaled / den;
  const BigInt twice_rem = 2 * (scaled % den);
  if (twice_rem > den || (twice_rem == den && (quotient & 1) != 0)) ++quotient;

  std::string body = quotient.str();
  if (digits > 0) {
    if (body.size() <= static_cast<std::size_t>(digits))
      body.insert(0, static_cast<std::size_t>(digits) + 1 - body.size(), '0');
    body.insert(body.size() - static_cast<std::size_t>(digits), ".");
  }
  if (negative && quotient != 0) body.insert(0, "-");
  return body;
}

Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view part) {
    std::string_view digits = part;
    if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
    if (digits.empty()) throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
    for (char c : digits)
      if (c < '0' || c > '9') throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
    std::string owned(part.front() == '+' ? part.substr(1) : part);
    return BigInt(owned);
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  BigInt num = parse_int(text.substr(0, slash));
  BigInt den = parse_int(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
  return Rational(num, den);
}

}  // namespace twistscl
