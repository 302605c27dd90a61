#include "shtuka/rational.hpp"

#include <sstream>

namespace shtuka {

std::string to_string(const Rational& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << "/" << denominator(r);
  return os.str();
}

Rational floor_rat(const Rational& r) {
  BigInt n = numerator(r), d = denominator(r);
  BigInt q = n / d;
  if (n % d != 0 && n < 0) q -= 1;
  return Rational(q);
}

Rational ceil_div(const Rational& r) {
  Rational f = floor_rat(r);
  return f == r ? f : f + 1;
}

RationalCoweight to_rational(const Coweight& mu) {
  RationalCoweight out;
  out.reserve(mu.size());
  for (auto v : mu) out.emplace_back(v);
  return out;
}

bool is_integral(const RationalCoweight& nu) {
  for (const auto& v : nu)
    if (denominator(v) != 1) return false;
  return true;
}

Coweight to_integral(const RationalCoweight& nu) {
  Coweight out;
  for (const auto& v : nu) out.push_back(static_cast<std::int64_t>(numerator(v)));
  return out;
}

std::string format_coweight(const Coweight& mu) {
  std::string s = "[";
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(mu[i]);
  }
  return s + "]";
}

std::string format_coweight(const RationalCoweight& nu) {
  std::string s = "[";
  for (std::size_t i = 0; i < nu.size(); ++i) {
    if (i) s += ",";
    s += to_string(nu[i]);
  }
  return s + "]";
}

}  // namespace shtuka
