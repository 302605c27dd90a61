#include "shtuka/slope_divide.hpp"

#include "shtuka/errors.hpp"

#include <algorithm>
#include <numeric>

namespace shtuka {

namespace {

std::int64_t newton_denominator(const AffineWeyl& x) {
  std::int64_t den = 1;
  for (const auto& v : newton_vector(x)) den = std::lcm(den, static_cast<std::int64_t>(denominator(v)));
  return den;
}

// Valuation of a, capped at d; throws when undecidable below d.
std::int64_t valuation_up_to(const Matrix& a, std::int64_t d) {
  std::int64_t v = d;
  bool short_precision = false;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      const Series& s = a(i, j);
      if (!s.is_known_zero()) v = std::min(v, s.offset());
      else if (s.precision() < d) short_precision = true;
    }
  if (v >= d && short_precision) throw PrecisionLoss("verification needs more precision");
  return v;
}

Matrix minus_identity(const Matrix& a) { return a - Matrix::identity(a.field(), a.rows()); }

// (1 + N)^{-1} for nilpotent N, exactly.
Matrix unipotent_inverse(const Matrix& g) {
  const int n = g.rows();
  Matrix N = minus_identity(g);
  Matrix term = Matrix::identity(g.field(), n), sum = term;
  for (int k = 1; k < n; ++k) {
    term = term * N;
    sum = k % 2 ? sum - term : sum + term;
  }
  return sum;
}

bool in_lnbar(const Matrix& g, const ParabolicSpec& P) {
  for (int i = 0; i < g.rows(); ++i)
    for (int j = 0; j < g.cols(); ++j) {
      RootPart part = i == j ? RootPart::M : P.part(i, j);
      if (part == RootPart::Nbar) continue;
      Series e = i == j ? g(i, j) - Series::one(g.field()) : g(i, j);
      if (!e.is_known_zero()) return false;
    }
  return true;
}

void require_fundamental(const AffineWeyl& x, const ParabolicSpec& P) {
  if (!is_p_fundamental(x, P).ok()) throw NotFundamental("x is not P-fundamental");
  if (!(enlarge_to_centralizer(x, P) == P)) throw NotFundamental("Levi is not the centralizer of the Newton point");
}

}  // namespace

SlopeDivisionResult slope_division(const Matrix& g, const AffineWeyl& x, const ParabolicSpec& P, std::int64_t d) {
  if (d <= 0) throw PreconditionError("target precision must be positive");
  require_fundamental(x, P);
  const FiniteField& F = g.field();
  IwahoriCell cell = iwahori_cell_decomposition(g);
  if (cell.x != x) throw NotInCell("g does not lie in IxI");
  Matrix X = Matrix::monomial(F, x), Xi = Matrix::monomial(F, x.inverse());
  std::int64_t tmin = *std::min_element(x.t().begin(), x.t().end());
  SlopeDivisionResult res;
  res.d = d;
  res.cap = d * newton_denominator(x) * 4;
  // g = h0 x h0', so h0^{-1} g sigma(h0) = x h0' sigma(h0) and h0' sigma(h0) = nbar' m' n'.
  Matrix h = cell.left;
  IwahoriDecomposition o = iwahori_decompose_opposite(cell.right * cell.left.sigma(), P);
  Matrix m = o.m, nbar = o.m.inverse() * o.nbar * o.m;
  Matrix r = o.n;
  SubgroupSpec in_n = SubgroupSpec::part(SubgroupSpec::Kind::IN, P);
  std::int64_t l = 0;
  while (valuation_up_to(minus_identity(r), d - tmin) < d - tmin) {
    if (l >= res.cap) throw NotFundamental("slope division exceeded its iteration cap");
    IwahoriDecomposition dec = iwahori_decompose(m * nbar * r, P);
    if (!subgroup_member(dec.n, in_n.conjugated(x, l)))
      throw std::logic_error("slope division step left x^l I_N x^-l");
    h = h * X * dec.n * Xi;
    m = dec.m;
    nbar = dec.nbar;
    r = X * dec.n.sigma() * Xi;
    ++l;
  }
  res.h = h;
  res.m = m;
  res.nbar = nbar;
  res.iterations = l;
  Matrix residual = sigma_conjugate(g, h) - X * m * nbar;
  res.residual_valuation = valuation_up_to(residual, d);
  if (res.residual_valuation < d) throw std::logic_error("slope division residual below target precision");
  return res;
}

BoundedExponent bounded_exponent(const Matrix& nbar, const AffineWeyl& x, const ParabolicSpec& P) {
  if (!in_lnbar(nbar, P)) throw NotUnipotentPart("element is not in the unipotent radical of the opposite parabolic");
  struct Entry {
    int i, j;
    std::int64_t v;
    bool hidden;
  };
  std::vector<Entry> entries;
  std::int64_t vmax = 0;
  for (int i = 0; i < nbar.rows(); ++i)
    for (int j = 0; j < nbar.cols(); ++j) {
      if (i == j || P.part(i, j) != RootPart::Nbar) continue;
      const Series& s = nbar(i, j);
      if (!s.is_known_zero()) entries.push_back({i, j, s.offset(), false});
      else if (!s.is_exact()) entries.push_back({i, j, s.precision(), true});
      else continue;
      vmax = std::max(vmax, std::abs(entries.back().v));
    }
  bool any_real = std::any_of(entries.begin(), entries.end(), [](const Entry& e) { return !e.hidden; });
  auto ok = [&](std::int64_t l, bool with_hidden) {
    AffineWeyl y = x.pow(l);
    for (const auto& e : entries) {
      if (e.hidden && !with_hidden) continue;
      if (!is_positive(y.act({e.i, e.j, e.v}))) return false;
    }
    return true;
  };
  std::int64_t B = 4 * newton_denominator(x) * (vmax + 2) * nbar.rows();
  if (!any_real && entries.empty()) return {-B, true};
  if (!ok(-B, true)) throw NotFundamental("x does not expand the opposite unipotent radical");
  std::int64_t best = -B, best_safe = -B;
  for (std::int64_t l = -B; l <= B; ++l) {
    if (ok(l, false)) best = l;
    if (ok(l, true)) best_safe = l;
  }
  if (!any_real) return {best_safe, false};
  if (best >= B) throw NotFundamental("x does not contract the opposite unipotent radical");
  if (best_safe != best) throw PrecisionLoss("bounded exponent depends on unknown digits");
  return {best, false};
}

TrivializationResult trivialize_unipotent(const Matrix& nbar, const AffineWeyl& x, const ParabolicSpec& P,
                                          std::int64_t d) {
  if (d <= 0) throw PreconditionError("target precision must be positive");
  require_fundamental(x, P);
  if (!in_lnbar(nbar, P)) throw NotUnipotentPart("element is not in the unipotent radical of the opposite parabolic");
  const FiniteField& F = nbar.field();
  const int n = nbar.rows();
  Matrix X = Matrix::monomial(F, x), Xi = Matrix::monomial(F, x.inverse());
  Matrix ninv = unipotent_inverse(nbar);
  TrivializationResult res;
  BoundedExponent be = bounded_exponent(nbar, x, P);
  res.l0 = be.all_levels ? 0 : be.l0;
  Matrix h = Matrix::identity(F, n);
  const std::int64_t cap = 8 * newton_denominator(x) * (d + 2 + std::abs(res.l0)) * n;
  auto residual = [&](const Matrix& hh) { return unipotent_inverse(hh) * X * nbar * hh.sigma() - X; };
  // h = sigma^{-1}(nbar^{-1} x^{-1} h x) is the fixed point equation
  Matrix rres = residual(h);
  while (valuation_up_to(rres, d) < d) {
    if (res.iterations >= cap) throw NotFundamental("trivialization exceeded its iteration cap");
    h = (ninv * Xi * h * X).sigma_inv();
    ++res.iterations;
    rres = residual(h);
  }
  res.h = h;
  res.residual_valuation = valuation_up_to(rres, d);
  return res;
}

bool CsdReport::condition_ok(char c) const {
  return std::all_of(conditions.begin(), conditions.end(),
                     [c](const CsdCondition& x) { return x.condition != c || x.ok; });
}

namespace {

bool block_integral(const Matrix& a) {
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (!valuation_at_least(a(i, j), 0)) return false;
  return true;
}

bool unit_determinant(const Matrix& a) {
  Series det = a.determinant();
  if (det.is_known_zero()) {
    if (det.is_exact()) return false;
    throw PrecisionLoss("block determinant undetermined");
  }
  return det.offset() == 0;
}

}  // namespace

CsdReport csd_check_glr(const LocalShtukaData& D) {
  const int n = D.A.rows();
  const int e = static_cast<int>(D.blocks.size());
  if (static_cast<int>(D.slopes.size()) != e) throw DimensionMismatch("one slope per block expected");
  if (std::accumulate(D.blocks.begin(), D.blocks.end(), 0) != n) throw DimensionMismatch("blocks do not sum to the rank");
  for (int i = 0; i + 1 < e; ++i)
    if (D.slopes[i] <= D.slopes[i + 1]) throw PreconditionError("slopes must be strictly decreasing");
  if (D.period <= 0) throw PreconditionError("period must be positive");
  Matrix phi = sigma_norm(D.A, D.period);
  CsdReport rep;
  int Di = 0, start = 0;
  for (int i = 0; i < e; ++i) {
    Di += D.blocks[i];
    Matrix tw = phi.shift(-D.slopes[i]);
    // (a) phi preserves the kernel of the projection to the first D_i coordinates
    // and z^{-t_i} phi is integral on the quotient
    bool zero_block = true;
    for (int r = 0; r < Di; ++r)
      for (int c = Di; c < n; ++c)
        if (!phi(r, c).is_known_zero()) zero_block = false;
    bool integral = block_integral(tw.block(0, 0, Di, Di));
    rep.conditions.push_back({'a', i + 1, zero_block && integral,
                              zero_block ? (integral ? "" : "twisted quotient block not integral")
                                         : "kernel not preserved"});
    // (b) the i-th graded piece is an isomorphism after the twist
    Matrix blk = tw.block(start, start, D.blocks[i], D.blocks[i]);
    bool iso = block_integral(blk) && unit_determinant(blk);
    rep.conditions.push_back({'b', i + 1, iso, iso ? "" : "graded piece is not an isomorphism"});
    start += D.blocks[i];
  }
  rep.ok = rep.condition_ok('a') && rep.condition_ok('b');
  return rep;
}

CsdReport csd_check_zink(const Matrix& A, const ParabolicSpec& P, const Coweight& mu, std::int64_t s) {
  const int n = A.rows();
  if (P.n() != n || static_cast<int>(mu.size()) != n) throw DimensionMismatch("rank mismatch in Zink check");
  if (!is_dominant(mu)) throw PreconditionError("mu must be dominant");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (P.block_of(i) == P.block_of(j) && mu[i] != mu[j]) throw NotCentral("mu is not central in the Levi");
  if (s <= 0) throw PreconditionError("period must be positive");
  Matrix phi = sigma_norm(A, s);
  Matrix psi(A.field(), n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) psi(i, j) = phi(i, j).shift(-mu[i]);
  CsdReport rep;
  bool n_zero = true;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && P.part(i, j) == RootPart::N && !psi(i, j).is_known_zero()) n_zero = false;
  rep.conditions.push_back({'p', 0, n_zero, n_zero ? "" : "N entries survive"});
  bool integral = block_integral(psi);
  rep.conditions.push_back({'i', 0, integral, integral ? "" : "not integral"});
  auto idx = P.block_indices();
  for (std::size_t b = 0; b < idx.size(); ++b) {
    const auto& ix = idx[b];
    Matrix blk(A.field(), static_cast<int>(ix.size()), static_cast<int>(ix.size()));
    for (std::size_t r = 0; r < ix.size(); ++r)
      for (std::size_t c = 0; c < ix.size(); ++c) blk(static_cast<int>(r), static_cast<int>(c)) = psi(ix[r], ix[c]);
    bool unit = integral && unit_determinant(blk);
    rep.conditions.push_back({'u', static_cast<int>(b) + 1, unit, unit ? "" : "Levi block not invertible"});
  }
  rep.ok = std::all_of(rep.conditions.begin(), rep.conditions.end(), [](const CsdCondition& c) { return c.ok; });
  return rep;
}

}  // namespace shtuka
