#pragma once

// Exact scalar types shared by every module.

#include <string>
#include <string_view>
#include <type_traits>

// Boost 1.74 probes `C::const_iterator` to detect byte containers, which breaks
// on Eigen 3.4 expressions under C++20 (their const_iterator is void).
#include <boost/multiprecision/traits/is_byte_container.hpp>
namespace boost::multiprecision::detail {
template <class C>
  requires std::is_void_v<typename C::const_iterator>
struct is_byte_container_imp<C, true> : std::false_type {};
}  // namespace boost::multiprecision::detail

#include <boost/multiprecision/cpp_int.hpp>

namespace twistscl {

namespace mp = boost::multiprecision;

using BigInt = mp::number<mp::cpp_int_backend<>, mp::et_off>;
using Rational = mp::number<mp::cpp_rational_backend, mp::et_off>;

inline Rational make_rational(const BigInt& num, const BigInt& den) { return Rational(num, den); }
inline Rational make_rational(long long num, long long den = 1) { return Rational(BigInt(num), BigInt(den)); }

inline BigInt numerator_of(const Rational& q) { return mp::numerator(q); }
inline BigInt denominator_of(const Rational& q) { return mp::denominator(q); }

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);

/// Fixed-point rendering with `digits` fractional digits, rounded half to even.
/// Presentation only; never fed back into computation.
std::string to_decimal(const Rational& q, int digits);

/// Parses "p/q" or "p" (optionally signed). Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

}  // namespace twistscl
