#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace shtuka {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

using Coweight = std::vector<std::int64_t>;
using RationalCoweight = std::vector<Rational>;

std::string to_string(const Rational& r);
Rational ceil_div(const Rational& r);  // smallest integer >= r
Rational floor_rat(const Rational& r);

RationalCoweight to_rational(const Coweight& mu);
bool is_integral(const RationalCoweight& nu);
Coweight to_integral(const RationalCoweight& nu);

std::string format_coweight(const Coweight& mu);
std::string format_coweight(const RationalCoweight& nu);

}  // namespace shtuka
