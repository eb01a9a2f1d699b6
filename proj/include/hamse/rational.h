#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

// boost 1.74 + C++20: `rational == integer` resolves to a reversed
// candidate that calls itself forever. Comparing against Rational(n) is fine;
// these deletions turn the bad form into a compile error.
namespace boost {
bool operator==(const rational<std::int64_t>&, int) = delete;
bool operator==(const rational<std::int64_t>&, long) = delete;
bool operator==(const rational<std::int64_t>&, long long) = delete;
bool operator==(int, const rational<std::int64_t>&) = delete;
bool operator==(long, const rational<std::int64_t>&) = delete;
bool operator==(long long, const rational<std::int64_t>&) = delete;
}  // namespace boost

namespace hamse {

/// Exact beat arithmetic. Quarter note = 1.
using Rational = boost::rational<std::int64_t>;

/// "3/2", "1", "0". Integers are written without a denominator.
std::string to_string(const Rational& r);

/// Parses "a", "a/b" or a terminating decimal "1.25". Returns nullopt on
/// malformed input or a zero denominator.
std::optional<Rational> parse_rational(std::string_view text);

/// Decimal expansion when the denominator has only factors 2 and 5.
std::optional<std::string> to_decimal_string(const Rational& r);

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

}  // namespace hamse
