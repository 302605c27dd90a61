#include "shtuka/loop_gln.hpp"

#include "shtuka/errors.hpp"

#include <algorithm>

namespace shtuka {

namespace {

Series unit_part(const Series& s, std::int64_t v) { return s.shift(-v); }

bool known_zero_entry(const Series& s) { return s.is_known_zero(); }

Matrix conjugate_by(const Matrix& g, const AffineWeyl& x, std::int64_t l) {
  // x^{-l} g x^{l}
  const FiniteField& F = g.field();
  AffineWeyl xl = x.pow(l);
  return Matrix::monomial(F, xl.inverse()) * g * Matrix::monomial(F, xl);
}

bool in_iwahori_level(const Matrix& g, std::int64_t n) {
  const int d = g.rows();
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const Series& e = g(i, j);
      if (n == 0) {
        if (i > j && !valuation_at_least(e, 1)) return false;
        if (i <= j && !valuation_at_least(e, 0)) return false;
        if (i == j && e.coeff(0) == 0) return false;
      } else {
        Series f = i == j ? e - Series::one(g.field()) : e;
        if (!valuation_at_least(f, i > j ? n + 1 : n)) return false;
      }
    }
  return true;
}

bool in_k_level(const Matrix& g, std::int64_t n) {
  const int d = g.rows();
  if (n == 0) {
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        if (!valuation_at_least(g(i, j), 0)) return false;
    Series det = g.determinant();
    if (det.is_known_zero()) {
      if (det.is_exact()) return false;
      throw PrecisionLoss("determinant undetermined in K_0 membership");
    }
    return det.offset() == 0;
  }
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Series f = i == j ? g(i, j) - Series::one(g.field()) : g(i, j);
      if (!valuation_at_least(f, n)) return false;
    }
  return true;
}

}  // namespace

bool valuation_at_least(const Series& s, std::int64_t n) {
  if (!s.is_known_zero()) return s.offset() >= n;
  if (s.precision() >= n) return true;
  throw PrecisionLoss("valuation test beyond known precision");
}

SubgroupSpec SubgroupSpec::conjugated(const AffineWeyl& x, std::int64_t l) const {
  if (conjugator) throw PreconditionError("subgroup is already conjugated");
  SubgroupSpec s = *this;
  s.conjugator = x;
  s.exponent = l;
  return s;
}

std::int64_t SubgroupSpec::required_precision() const {
  std::int64_t base = 1;
  if (kind == Kind::K) base = std::max<std::int64_t>(level, 1);
  if (kind == Kind::I) base = level + 1;
  if (conjugator) {
    AffineWeyl xl = conjugator->pow(exponent);
    std::int64_t spread = 0;
    for (auto a : xl.t())
      for (auto b : xl.t()) spread = std::max(spread, a - b);
    base += spread;
  }
  return base;
}

std::string SubgroupSpec::to_string() const {
  std::string s;
  switch (kind) {
    case Kind::K: s = "K_" + std::to_string(level); break;
    case Kind::I: s = level == 0 ? "I" : "I_" + std::to_string(level); break;
    case Kind::IM: s = "I_M"; break;
    case Kind::IN: s = "I_N"; break;
    case Kind::INbar: s = "I_Nbar"; break;
  }
  if (parabolic) s += "[" + parabolic->to_string() + "]";
  if (conjugator) s = "x^" + std::to_string(exponent) + " " + s + " x^" + std::to_string(-exponent) + " with x=" + conjugator->to_string();
  return s;
}

bool subgroup_member(const Matrix& g0, const SubgroupSpec& s) {
  if (!g0.square()) throw DimensionMismatch("subgroup membership of a non-square matrix");
  Matrix g = s.conjugator ? conjugate_by(g0, *s.conjugator, s.exponent) : g0;
  switch (s.kind) {
    case SubgroupSpec::Kind::K: return in_k_level(g, s.level);
    case SubgroupSpec::Kind::I: return in_iwahori_level(g, s.level);
    default: break;
  }
  if (!s.parabolic) throw PreconditionError("parabolic subgroup spec without a parabolic");
  const ParabolicSpec& P = *s.parabolic;
  if (P.n() != g.rows()) throw DimensionMismatch("parabolic rank mismatch");
  if (!in_iwahori_level(g, 0)) return false;
  for (int i = 0; i < g.rows(); ++i)
    for (int j = 0; j < g.cols(); ++j) {
      RootPart part = i == j ? RootPart::M : P.part(i, j);
      Series e = g(i, j);
      bool must_vanish = false;
      if (s.kind == SubgroupSpec::Kind::IM) must_vanish = part != RootPart::M;
      if (s.kind == SubgroupSpec::Kind::IN) {
        if (part == RootPart::M) e = i == j ? e - Series::one(g.field()) : e;
        must_vanish = part != RootPart::N;
      }
      if (s.kind == SubgroupSpec::Kind::INbar) {
        if (part == RootPart::M) e = i == j ? e - Series::one(g.field()) : e;
        must_vanish = part != RootPart::Nbar;
      }
      if (must_vanish && !known_zero_entry(e)) return false;
    }
  return true;
}

Coweight hodge_point(const Matrix& g) {
  if (!g.square()) throw DimensionMismatch("Hodge point of a non-square matrix");
  const int n = g.rows();
  Matrix a = g;
  std::vector<bool> row_used(n, false), col_used(n, false);
  Coweight divisors;
  for (int step = 0; step < n; ++step) {
    int pi = -1, pj = -1;
    std::int64_t best = 0, unknown = kExact;
    bool all_exact_zero = true;
    for (int i = 0; i < n; ++i) {
      if (row_used[i]) continue;
      for (int j = 0; j < n; ++j) {
        if (col_used[j]) continue;
        const Series& e = a(i, j);
        if (e.is_known_zero()) {
          if (!e.is_exact()) {
            all_exact_zero = false;
            unknown = std::min(unknown, e.precision());
          }
          continue;
        }
        all_exact_zero = false;
        if (pi < 0 || e.offset() < best) {
          pi = i;
          pj = j;
          best = e.offset();
        }
      }
    }
    if (pi < 0) {
      if (all_exact_zero) throw Singular("Hodge point of a singular matrix");
      throw PrecisionLoss("Smith pivot undetermined");
    }
    if (unknown < best) throw PrecisionLoss("Smith pivot undetermined");
    Series u = unit_part(a(pi, pj), best);
    for (int i = 0; i < n; ++i) {
      if (i == pi || row_used[i] || a(i, pj).is_exact_zero()) continue;
      Series c = unit_part(a(i, pj), best);
      for (int j = 0; j < n; ++j)
        if (!col_used[j]) a(i, j) = u * a(i, j) - c * a(pi, j);
    }
    for (int j = 0; j < n; ++j) {
      if (j == pj || col_used[j] || a(pi, j).is_exact_zero()) continue;
      Series c = unit_part(a(pi, j), best);
      for (int i = 0; i < n; ++i)
        if (!row_used[i]) a(i, j) = u * a(i, j) - c * a(i, pj);
    }
    row_used[pi] = col_used[pj] = true;
    divisors.push_back(best);
  }
  return dominant_representative(divisors);
}

std::int64_t kottwitz(const Matrix& g) {
  Series det = g.determinant();
  if (det.is_known_zero()) {
    if (det.is_exact()) throw Singular("Kottwitz map of a singular matrix");
    throw PrecisionLoss("determinant valuation undetermined");
  }
  return det.offset();
}

RationalCoweight newton_point(const Matrix& g) {
  const int n = g.rows();
  const std::int64_t m = g.field().m();
  Matrix N = sigma_norm(g, m);
  std::vector<Series> cp = characteristic_polynomial(N);
  if (cp[n].is_known_zero()) {
    if (cp[n].is_exact()) throw Singular("Newton point of a singular matrix");
    throw PrecisionLoss("determinant valuation undetermined");
  }
  std::vector<int> xs;
  std::vector<std::int64_t> ys;
  for (int i = 0; i <= n; ++i)
    if (!cp[i].is_known_zero()) {
      xs.push_back(i);
      ys.push_back(cp[i].offset());
    }
  // lower convex hull, monotone chain
  std::vector<int> hull;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    while (hull.size() >= 2) {
      int a = hull[hull.size() - 2], b = hull.back();
      // remove b if it lies on or above segment a-k
      __int128 cross = static_cast<__int128>(xs[b] - xs[a]) * (ys[k] - ys[a]) -
                       static_cast<__int128>(ys[b] - ys[a]) * (xs[k] - xs[a]);
      if (cross <= 0) hull.pop_back();
      else break;
    }
    hull.push_back(static_cast<int>(k));
  }
  RationalCoweight slopes;
  for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
    int a = hull[h], b = hull[h + 1];
    Rational s(ys[b] - ys[a], xs[b] - xs[a]);
    for (int k = xs[a]; k < xs[b]; ++k) slopes.push_back(s / m);
    // undetermined coefficients must not be able to dip below the polygon
    for (int i = xs[a] + 1; i < xs[b]; ++i)
      if (cp[i].is_known_zero() && !cp[i].is_exact()) {
        Rational hv = Rational(ys[a]) + s * (i - xs[a]);
        if (Rational(cp[i].precision()) < hv) throw PrecisionLoss("characteristic polynomial coefficient undetermined");
      }
  }
  return dominant_representative(slopes);
}

RationalCoweight newton_hodge_limit(const Matrix& g, std::int64_t s) {
  Coweight h = hodge_point(sigma_norm(g, s));
  RationalCoweight out;
  for (auto v : h) out.emplace_back(Rational(v, s));
  return out;
}

RationalCoweight newton_hodge_difference(const Matrix& g, std::int64_t s) {
  Coweight h1 = hodge_point(sigma_norm(g, s)), h2 = hodge_point(sigma_norm(g, 2 * s));
  RationalCoweight out;
  for (std::size_t i = 0; i < h1.size(); ++i) out.emplace_back(Rational(h2[i] - h1[i], s));
  return out;
}

SigmaInvariants sigma_invariants(const Matrix& g) { return {newton_point(g), kottwitz(g)}; }

bool mazur_check(const Matrix& g) {
  RationalCoweight nu = newton_point(g);
  Coweight mu = hodge_point(g);
  return coordinate_sum(nu) == Rational(kottwitz(g)) && dominance_leq(nu, to_rational(mu));
}

namespace {

IwahoriCell reduce_cell(const Matrix& g, bool track) {
  if (!g.square()) throw DimensionMismatch("Iwahori cell of a non-square matrix");
  const int n = g.rows();
  const FiniteField& F = g.field();
  Matrix a = g;
  Matrix A = track ? Matrix::identity(F, n) : Matrix();
  Matrix B = track ? Matrix::identity(F, n) : Matrix();
  std::vector<bool> row_used(n, false), col_used(n, false);
  Perm w(n, 0);
  Coweight t(n, 0);
  std::vector<Series> units(n);
  auto key = [n](int i, int j, std::int64_t v) { return static_cast<std::int64_t>(n) * v + j - i; };
  for (int step = 0; step < n; ++step) {
    int pi = -1, pj = -1;
    std::int64_t best = 0, unknown = kExact;
    bool all_exact_zero = true;
    for (int i = 0; i < n; ++i) {
      if (row_used[i]) continue;
      for (int j = 0; j < n; ++j) {
        if (col_used[j]) continue;
        const Series& e = a(i, j);
        if (e.is_known_zero()) {
          if (!e.is_exact()) {
            all_exact_zero = false;
            unknown = std::min(unknown, key(i, j, e.precision()));
          }
          continue;
        }
        all_exact_zero = false;
        std::int64_t k = key(i, j, e.offset());
        if (pi < 0 || k < best) {
          pi = i;
          pj = j;
          best = k;
        }
      }
    }
    if (pi < 0) {
      if (all_exact_zero) throw Singular("Iwahori cell of a singular matrix");
      throw PrecisionLoss("Iwahori pivot undetermined");
    }
    if (unknown < best) throw PrecisionLoss("Iwahori pivot undetermined");
    std::int64_t v = a(pi, pj).offset();
    Series u = unit_part(a(pi, pj), v);
    for (int i = 0; i < n; ++i) {
      if (i == pi || row_used[i] || a(i, pj).is_exact_zero()) continue;
      Series c = unit_part(a(i, pj), v);
      for (int j = 0; j < n; ++j) {
        a(i, j) = u * a(i, j) - c * a(pi, j);
        if (track) A(i, j) = u * A(i, j) - c * A(pi, j);
      }
    }
    for (int j = 0; j < n; ++j) {
      if (j == pj || col_used[j] || a(pi, j).is_exact_zero()) continue;
      Series c = unit_part(a(pi, j), v);
      for (int i = 0; i < n; ++i) {
        a(i, j) = u * a(i, j) - c * a(i, pj);
        if (track) B(i, j) = u * B(i, j) - c * B(i, pj);
      }
    }
    row_used[pi] = col_used[pj] = true;
    w[pj] = pi;
    t[pj] = v;
    units[pi] = u;
  }
  IwahoriCell out{AffineWeyl(w, t), Matrix(), Matrix()};
  if (track) {
    // A g B = D x with D diagonal of units
    out.left = A.inverse() * Matrix::diagonal(F, units);
    out.right = B.inverse();
  }
  return out;
}

IwahoriDecomposition udl(const Matrix& g, std::vector<int> blocks) {
  const FiniteField& F = g.field();
  const int n = g.rows();
  if (blocks.size() <= 1) return {Matrix::identity(F, n), g, Matrix::identity(F, n)};
  int k = blocks.back();
  blocks.pop_back();
  int s = n - k;
  Matrix A = g.block(0, 0, s, s), B = g.block(0, s, s, k), C = g.block(s, 0, k, s), D = g.block(s, s, k, k);
  Matrix Dinv = D.inverse();
  Matrix X = B * Dinv, Y = Dinv * C;
  Matrix S = A - X * C;
  IwahoriDecomposition sub = udl(S, blocks);
  IwahoriDecomposition out{Matrix::identity(F, n), Matrix(F, n, n), Matrix::identity(F, n)};
  out.n.set_block(0, 0, sub.n);
  out.n.set_block(0, s, X);
  out.m.set_block(0, 0, sub.m);
  out.m.set_block(s, s, D);
  out.nbar.set_block(0, 0, sub.nbar);
  out.nbar.set_block(s, 0, Y);
  return out;
}

IwahoriDecomposition ldu(const Matrix& g, std::vector<int> blocks) {
  const FiniteField& F = g.field();
  const int n = g.rows();
  if (blocks.size() <= 1) return {Matrix::identity(F, n), g, Matrix::identity(F, n)};
  int k = blocks.front();
  blocks.erase(blocks.begin());
  int s = n - k;
  Matrix A = g.block(0, 0, k, k), B = g.block(0, k, k, s), C = g.block(k, 0, s, k), D = g.block(k, k, s, s);
  Matrix Ainv = A.inverse();
  Matrix X = Ainv * B, Y = C * Ainv;
  Matrix S = D - Y * B;
  IwahoriDecomposition sub = ldu(S, blocks);
  IwahoriDecomposition out{Matrix::identity(F, n), Matrix(F, n, n), Matrix::identity(F, n)};
  out.nbar.set_block(k, 0, Y);
  out.nbar.set_block(k, k, sub.nbar);
  out.m.set_block(0, 0, A);
  out.m.set_block(k, k, sub.m);
  out.n.set_block(0, k, X);
  out.n.set_block(k, k, sub.n);
  return out;
}

IwahoriDecomposition in_frame(const Matrix& g, const ParabolicSpec& P, bool opposite) {
  if (P.n() != g.rows()) throw DimensionMismatch("parabolic rank mismatch");
  const Perm& w = P.conjugator();
  Matrix gs = g.permuted(perm_inverse(w));
  IwahoriDecomposition d = opposite ? ldu(gs, P.blocks()) : udl(gs, P.blocks());
  return {d.n.permuted(w), d.m.permuted(w), d.nbar.permuted(w)};
}

}  // namespace

IwahoriCell iwahori_cell_decomposition(const Matrix& g) { return reduce_cell(g, true); }
AffineWeyl iwahori_cell(const Matrix& g) { return reduce_cell(g, false).x; }

IwahoriDecomposition iwahori_decompose(const Matrix& g, const ParabolicSpec& P) { return in_frame(g, P, false); }

IwahoriDecomposition iwahori_decompose_opposite(const Matrix& g, const ParabolicSpec& P) {
  return in_frame(g, P, true);
}

IwahoriDecomposition iwahori_decompose(const Matrix& g, const ParabolicSpec& P, const std::vector<SubgroupSpec>& K) {
  for (const auto& k : K)
    if (!subgroup_member(g, k)) throw NotInSubgroup("element is not in " + k.to_string());
  IwahoriDecomposition d = iwahori_decompose(g, P);
  for (const auto& k : K)
    for (const Matrix* f : {&d.n, &d.m, &d.nbar})
      if (!subgroup_member(*f, k)) throw NotInSubgroup("Iwahori factor left " + k.to_string());
  return d;
}

std::int64_t conjugation_bound(const Coweight& mu) {
  if (mu.empty()) return 1;
  if (!is_dominant(mu)) throw PreconditionError("conjugation bound needs a dominant coweight");
  return mu.front() - mu.back() + 1;
}

}  // namespace shtuka
