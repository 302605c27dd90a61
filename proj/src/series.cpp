#include "shtuka/series.hpp"

#include "shtuka/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>

namespace shtuka {

namespace {
std::atomic<std::int64_t> g_precision{-1};

std::int64_t clamp_prec(std::int64_t p) { return std::min(p, kExact); }
}  // namespace

std::int64_t default_precision() {
  std::int64_t p = g_precision.load();
  if (p > 0) return p;
  p = 32;
  if (const char* env = std::getenv("SHTUKA_PRECISION")) {
    long v = std::strtol(env, nullptr, 10);
    if (v > 0) p = v;
  }
  g_precision.store(p);
  return p;
}

void set_default_precision(std::int64_t n) {
  if (n <= 0) throw PreconditionError("precision must be positive");
  g_precision.store(n);
}

Series::Series(const FiniteField* F, std::int64_t offset, std::vector<Elem> coeffs, std::int64_t prec)
    : F_(F), off_(offset), c_(std::move(coeffs)), prec_(clamp_prec(prec)) {
  normalize();
}

Series Series::monomial(const FiniteField& F, Elem c, std::int64_t k) { return Series(&F, k, {c}); }

void Series::normalize() {
  std::size_t lead = 0;
  while (lead < c_.size() && c_[lead] == 0) ++lead;
  if (lead == c_.size()) {
    c_.clear();
    off_ = 0;
    return;
  }
  if (lead) {
    c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
    off_ += static_cast<std::int64_t>(lead);
  }
  if (off_ >= prec_) {
    c_.clear();
    off_ = 0;
    return;
  }
  if (!is_exact() && off_ + static_cast<std::int64_t>(c_.size()) > prec_) c_.resize(prec_ - off_);
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const FiniteField* Series::field_with(const Series& o) const {
  if (F_ && o.F_ && F_ != o.F_) throw DimensionMismatch("series over different fields");
  return F_ ? F_ : o.F_;
}

std::optional<std::int64_t> Series::valuation() const {
  if (c_.empty()) return std::nullopt;
  return off_;
}

Elem Series::coeff(std::int64_t k) const {
  if (k >= prec_) throw PrecisionLoss("coefficient beyond known precision");
  if (k < off_ || k >= off_ + static_cast<std::int64_t>(c_.size())) return 0;
  return c_[k - off_];
}

Elem Series::leading() const {
  if (c_.empty()) throw PrecisionLoss("leading coefficient of an indeterminate or zero series");
  return c_.front();
}

Series Series::operator+(const Series& o) const {
  const FiniteField* F = field_with(o);
  if (c_.empty() && o.c_.empty()) return Series(F, std::min(prec_, o.prec_));
  std::int64_t prec = std::min(prec_, o.prec_);
  std::int64_t lo = std::min(c_.empty() ? o.off_ : off_, o.c_.empty() ? off_ : o.off_);
  std::int64_t hi = std::max(off_ + static_cast<std::int64_t>(c_.size()), o.off_ + static_cast<std::int64_t>(o.c_.size()));
  hi = std::min(hi, prec);
  if (hi <= lo) return Series(F, prec);
  std::vector<Elem> r(hi - lo, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    std::int64_t k = off_ + static_cast<std::int64_t>(i);
    if (k < hi) r[k - lo] = c_[i];
  }
  for (std::size_t i = 0; i < o.c_.size(); ++i) {
    std::int64_t k = o.off_ + static_cast<std::int64_t>(i);
    if (k < hi) r[k - lo] = F->add(r[k - lo], o.c_[i]);
  }
  return Series(F, lo, std::move(r), prec);
}

Series Series::operator-() const {
  Series r = *this;
  if (F_)
    for (auto& c : r.c_) c = F_->neg(c);
  return r;
}

Series Series::operator-(const Series& o) const { return *this + (-o); }

Series Series::operator*(const Series& o) const {
  const FiniteField* F = field_with(o);
  std::int64_t v1 = valuation_bound(), v2 = o.valuation_bound();
  std::int64_t p1 = is_exact() ? kExact : clamp_prec(prec_ + v2);
  std::int64_t p2 = o.is_exact() ? kExact : clamp_prec(o.prec_ + v1);
  std::int64_t prec = std::min(p1, p2);
  if (c_.empty() || o.c_.empty()) return Series(F, prec);
  std::int64_t lo = off_ + o.off_;
  std::int64_t len = static_cast<std::int64_t>(c_.size() + o.c_.size() - 1);
  if (prec < kExact) len = std::min(len, prec - lo);
  if (len <= 0) return Series(F, prec);
  std::vector<Elem> r(len, 0);
  for (std::size_t i = 0; i < c_.size() && static_cast<std::int64_t>(i) < len; ++i) {
    if (c_[i] == 0) continue;
    std::size_t jmax = std::min<std::size_t>(o.c_.size(), static_cast<std::size_t>(len) - i);
    for (std::size_t j = 0; j < jmax; ++j) r[i + j] = F->add(r[i + j], F->mul(c_[i], o.c_[j]));
  }
  return Series(F, lo, std::move(r), prec);
}

Series Series::scale(Elem c) const {
  if (!F_) return *this;
  if (c == 0) return Series(F_, prec_);
  Series r = *this;
  for (auto& x : r.c_) x = F_->mul(x, c);
  return r;
}

Series Series::shift(std::int64_t k) const {
  Series r = *this;
  if (!r.c_.empty()) r.off_ += k;
  if (!is_exact()) r.prec_ = prec_ + k;
  return r;
}

Series Series::truncate(std::int64_t prec) const {
  Series r = *this;
  r.prec_ = std::min(prec_, clamp_prec(prec));
  r.normalize();
  return r;
}

Series Series::inverse() const {
  if (c_.empty()) {
    if (is_exact()) throw Singular("inverse of zero series");
    throw PrecisionLoss("inverse of a series with unknown valuation");
  }
  const FiniteField& F = *F_;
  if (is_exact() && c_.size() == 1) return Series(F_, -off_, {F.inv(c_[0])});
  std::int64_t rel = is_exact() ? default_precision() : prec_ - off_;
  std::vector<Elem> r(rel, 0);
  Elem u0inv = F.inv(c_[0]);
  r[0] = u0inv;
  for (std::int64_t k = 1; k < rel; ++k) {
    Elem s = 0;
    std::int64_t jmax = std::min<std::int64_t>(k, static_cast<std::int64_t>(c_.size()) - 1);
    for (std::int64_t j = 1; j <= jmax; ++j) s = F.add(s, F.mul(c_[j], r[k - j]));
    r[k] = F.neg(F.mul(s, u0inv));
  }
  return Series(F_, -off_, std::move(r), rel - off_);
}

Series Series::sigma() const {
  Series r = *this;
  if (F_)
    for (auto& c : r.c_) c = F_->sigma(c);
  return r;
}

Series Series::sigma_inv() const {
  Series r = *this;
  if (F_)
    for (auto& c : r.c_) c = F_->sigma_inv(c);
  return r;
}

Series Series::sigma_pow(std::int64_t k) const {
  Series r = *this;
  if (F_)
    for (auto& c : r.c_) c = F_->sigma_pow(c, k);
  return r;
}

bool Series::operator==(const Series& o) const {
  return prec_ == o.prec_ && c_ == o.c_ && (c_.empty() || off_ == o.off_);
}

std::string Series::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    std::int64_t k = off_ + static_cast<std::int64_t>(i);
    std::string cs = F_->to_string(c_[i]);
    if (cs.find('+') != std::string::npos) cs = "(" + cs + ")";
    std::string term;
    if (k == 0) {
      term = cs;
    } else {
      if (cs != "1") term = cs + "*";
      term += k == 1 ? "z" : "z^" + std::to_string(k);
    }
    if (!s.empty()) s += " + ";
    s += term;
  }
  if (!is_exact()) {
    if (!s.empty()) s += " + ";
    s += "O(z^" + std::to_string(prec_) + ")";
  }
  return s.empty() ? "0" : s;
}

}  // namespace shtuka
