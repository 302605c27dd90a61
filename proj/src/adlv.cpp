#include "shtuka/adlv.hpp"

#include "shtuka/errors.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <map>
#include <thread>
#include <unordered_set>

namespace shtuka {

namespace {

bool leq_mu(const Coweight& h, const Coweight& mu) { return dominance_leq(h, dominant_representative(mu)); }

bool verdict(const Matrix& h, const AdlvCondition& c) {
  switch (c.criterion) {
    case AdlvCriterion::ExactMu:
      return hodge_point(h) == dominant_representative(c.mu);
    case AdlvCriterion::LeqMu:
      return leq_mu(hodge_point(h), c.mu);
    case AdlvCriterion::IwahoriY:
      if (!c.y) throw PreconditionError("Iwahori criterion needs y");
      return iwahori_cell(h) == *c.y;
  }
  return false;
}

Matrix root_element(const FiniteField& F, int n, const AffineRoot& a, Elem c) {
  Matrix u = Matrix::identity(F, n);
  u(a.i, a.j) = Series::monomial(F, c, a.k);
  return u;
}

}  // namespace

bool is_adlv_point(const Matrix& g, const Matrix& b, const AdlvCondition& c) {
  if (!g.square() || g.rows() != b.rows()) throw DimensionMismatch("g and b must be square of equal size");
  return verdict(sigma_conjugate(b, g), c);
}

CellParametrization CellParametrization::of(const AffineWeyl& w, AdlvLevel level) {
  CellParametrization cp;
  cp.w = w;
  cp.level = level;
  const int n = w.n();
  AffineWeyl wi = w.inverse();
  std::int64_t spread = 0;
  for (auto a : w.t())
    for (auto b : w.t()) spread = std::max(spread, a - b);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      for (std::int64_t k = min_positive_level(i, j); k <= spread + 1; ++k) {
        AffineRoot img = wi.act({i, j, k});
        bool outside = level == AdlvLevel::K0 ? img.k < 0 : !is_positive(img);
        if (outside) cp.roots.push_back({i, j, k});
      }
    }
  return cp;
}

Matrix CellParametrization::representative(const FiniteField& F, const std::vector<Elem>& coords) const {
  if (coords.size() != roots.size()) throw DimensionMismatch("one coordinate per root subgroup");
  const int n = w.n();
  Matrix u = Matrix::identity(F, n);
  for (std::size_t r = 0; r < roots.size(); ++r) u = u * root_element(F, n, roots[r], coords[r]);
  return u * Matrix::monomial(F, w);
}

std::vector<CellParametrization> adlv_cells(int n, AdlvLevel level, std::int64_t L) {
  std::vector<AffineWeyl> found{AffineWeyl::identity(n)};
  std::unordered_set<AffineWeyl, AffineWeylHash> seen(found.begin(), found.end());
  std::vector<AffineWeyl> frontier = found;
  for (std::int64_t len = 1; len <= L; ++len) {
    std::vector<AffineWeyl> next;
    for (const auto& x : frontier)
      for (int i = 0; i < n; ++i) {
        AffineWeyl y = AffineWeyl::simple_reflection(n, i) * x;
        if (length(y) != len || !seen.insert(y).second) continue;
        next.push_back(y);
      }
    found.insert(found.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  std::vector<CellParametrization> cells;
  for (const auto& x : found) {
    if (level == AdlvLevel::K0) {
      bool minimal = true;
      for (int i = 1; i < n; ++i)
        if (length(x * AffineWeyl::simple_reflection(n, i)) < length(x)) minimal = false;
      if (!minimal) continue;
    }
    cells.push_back(CellParametrization::of(x, level));
  }
  std::sort(cells.begin(), cells.end(), [](const auto& a, const auto& b) {
    return a.dimension() != b.dimension() ? a.dimension() < b.dimension() : a.w < b.w;
  });
  return cells;
}

Matrix embed_prime_field(const Matrix& b, const FiniteField& F) {
  Matrix out(F, b.rows(), b.cols());
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) {
      const Series& s = b(i, j);
      if (s.field() && s.field()->p() != F.p()) throw PreconditionError("characteristic mismatch");
      for (Elem c : s.coeffs())
        if (c >= static_cast<Elem>(F.p())) throw PreconditionError("b must have prime-field coefficients");
      out(i, j) = Series(&F, s.offset(), s.coeffs(), s.precision());
    }
  return out;
}

namespace {

// Hodge points of g^{-1} b sigma(g) for g = U w, n <= 3, b and b^{-1} exact Laurent polynomials.
// Valuations only: min val of h and of h^{-1} give the extreme elementary divisors.
class FastKernel {
 public:
  FastKernel(const Matrix& b, const Matrix& binv, const CellParametrization& cell)
      : F_(b.field()), n_(b.rows()), cell_(cell) {
    std::int64_t lo = kExact, hi = -kExact;
    for (const Matrix* m : {&b, &binv})
      for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
          const Series& s = (*m)(i, j);
          if (s.is_known_zero()) continue;
          lo = std::min(lo, s.offset());
          hi = std::max(hi, s.offset() + static_cast<std::int64_t>(s.coeffs().size()) - 1);
        }
    std::int64_t ksum = 0;
    for (const auto& a : cell.roots) ksum += a.k;
    lo_ = lo;
    W_ = static_cast<int>(hi - lo + 2 * ksum + 1);
    load(b, b_);
    load(binv, binv_);
    kappa_ = 0;
    Series det = b.determinant();
    kappa_ = det.offset();
    Perm winv = perm_inverse(cell.w.w());
    twist_.assign(static_cast<std::size_t>(n_) * n_, 0);
    // val h(i, j) = val Y(w(i), w(j)) + t_j - t_i
    for (int a = 0; a < n_; ++a)
      for (int c = 0; c < n_; ++c) twist_[a * n_ + c] = cell.w.t()[winv[c]] - cell.w.t()[winv[a]];
  }

  // Dominant Hodge point written to mu[0..n).
  void hodge(const std::vector<Elem>& coords, const std::vector<Elem>& scoords, std::vector<Elem>& y,
             std::int64_t* mu) const {
    if (n_ == 1) {
      mu[0] = kappa_;
      return;
    }
    mu[n_ - 1] = run(b_, coords, scoords, y);
    mu[0] = -run(binv_, scoords, coords, y);
    if (n_ == 3) mu[1] = kappa_ - mu[0] - mu[2];
  }

  std::size_t buffer_size() const { return static_cast<std::size_t>(n_) * n_ * W_; }

 private:
  void load(const Matrix& m, std::vector<Elem>& dst) const {
    dst.assign(buffer_size(), 0);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) {
        const Series& s = m(i, j);
        for (std::size_t k = 0; k < s.coeffs().size(); ++k) dst[(i * n_ + j) * W_ + (s.offset() - lo_) + k] = s.coeffs()[k];
      }
  }

  // Y = (prod U_a(l))^{-1} start (prod U_a(r)), min twisted valuation.
  std::int64_t run(const std::vector<Elem>& start, const std::vector<Elem>& l, const std::vector<Elem>& r,
                   std::vector<Elem>& y) const {
    y = start;
    const auto& roots = cell_.roots;
    for (std::size_t a = 0; a < roots.size(); ++a) {
      if (r[a] == 0) continue;
      // column j += c z^k column i
      for (int row = 0; row < n_; ++row) axpy(y, row * n_ + roots[a].j, row * n_ + roots[a].i, r[a], roots[a].k);
    }
    for (std::size_t a = 0; a < roots.size(); ++a) {
      if (l[a] == 0) continue;
      // row i -= c z^k row j
      Elem c = F_.neg(l[a]);
      for (int col = 0; col < n_; ++col) axpy(y, roots[a].i * n_ + col, roots[a].j * n_ + col, c, roots[a].k);
    }
    std::int64_t v = kExact;
    for (int e = 0; e < n_ * n_; ++e) {
      const Elem* p = &y[e * W_];
      for (int k = 0; k < W_; ++k)
        if (p[k]) {
          v = std::min(v, lo_ + k + twist_[e]);
          break;
        }
    }
    return v;
  }

  void axpy(std::vector<Elem>& y, int dst, int src, Elem c, std::int64_t k) const {
    Elem* d = &y[dst * W_];
    const Elem* s = &y[src * W_];
    for (int e = 0; e + k < W_; ++e)
      if (s[e]) d[e + k] = F_.add(d[e + k], F_.mul(c, s[e]));
  }

  const FiniteField& F_;
  int n_;
  const CellParametrization& cell_;
  std::int64_t lo_ = 0, kappa_ = 0;
  int W_ = 0;
  std::vector<Elem> b_, binv_;
  std::vector<std::int64_t> twist_;
};

bool exact_laurent(const Matrix& m) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_exact()) return false;
  return true;
}

std::uint64_t ipow(std::uint64_t b, std::int64_t e) {
  std::uint64_t r = 1;
  for (std::int64_t i = 0; i < e; ++i) {
    if (r > UINT64_MAX / b) return UINT64_MAX;
    r *= b;
  }
  return r;
}

struct Tally {
  std::uint64_t exact = 0, leq = 0;
};

Tally count_cell(const Matrix& b, const std::optional<Matrix>& binv, const AdlvCondition& c,
                 const CellParametrization& cell, unsigned threads, bool generic) {
  const FiniteField& F = b.field();
  const std::size_t r = cell.roots.size();
  const std::uint64_t total = ipow(F.size(), static_cast<std::int64_t>(r));
  const bool fast = !generic && binv.has_value() && c.criterion != AdlvCriterion::IwahoriY;
  std::optional<FastKernel> kernel;
  if (fast) kernel.emplace(b, *binv, cell);
  Coweight mu = dominant_representative(c.mu);
  const int n = b.rows();
  Matrix winv = Matrix::monomial(F, cell.w.inverse());
  std::vector<std::int64_t> mu_partial(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) mu_partial[i] = (i ? mu_partial[i - 1] : 0) + mu[i];

  auto work = [&](std::uint64_t begin, std::uint64_t end, Tally& out) {
    std::vector<Elem> coords(r), scoords(r), buf;
    std::array<std::int64_t, 3> h{};
    std::uint64_t idx = begin;
    for (std::size_t a = 0; a < r; ++a) {
      coords[a] = static_cast<Elem>(idx % F.size());
      idx /= F.size();
    }
    for (std::uint64_t t = begin; t < end; ++t) {
      for (std::size_t a = 0; a < r; ++a) scoords[a] = F.sigma(coords[a]);
      if (fast) {
        kernel->hodge(coords, scoords, buf, h.data());
        bool exact = true, leq = true;
        std::int64_t ph = 0;
        for (int i = 0; i < n; ++i) {
          exact = exact && h[i] == mu[i];
          ph += h[i];
          // dominance for dominant coweights: partial sums, equal total
          if (i + 1 < n ? ph > mu_partial[i] : ph != mu_partial[i]) leq = false;
        }
        out.exact += exact;
        out.leq += leq;
      } else {
        Matrix g = cell.representative(F, coords);
        Matrix ginv = winv;
        for (std::size_t a = r; a-- > 0;) ginv = ginv * root_element(F, n, cell.roots[a], F.neg(coords[a]));
        Matrix h = ginv * b * g.sigma();
        if (c.criterion == AdlvCriterion::IwahoriY) {
          if (verdict(h, c)) ++out.exact;
        } else {
          Coweight hp = hodge_point(h);
          if (hp == mu) ++out.exact;
          if (leq_mu(hp, mu)) ++out.leq;
        }
      }
      for (std::size_t a = 0; a < r; ++a) {
        if (++coords[a] < F.size()) break;
        coords[a] = 0;
      }
    }
  };

  unsigned nt = std::max(1u, threads);
  if (total < 4096) nt = 1;
  std::vector<Tally> parts(nt);
  std::vector<std::thread> pool;
  for (unsigned k = 0; k < nt; ++k) {
    std::uint64_t begin = total / nt * k, end = k + 1 == nt ? total : total / nt * (k + 1);
    if (nt == 1) work(begin, end, parts[k]);
    else pool.emplace_back(work, begin, end, std::ref(parts[k]));
  }
  for (auto& th : pool) th.join();
  Tally sum;
  for (const auto& p : parts) {
    sum.exact += p.exact;
    sum.leq += p.leq;
  }
  return sum;
}

}  // namespace

DimensionFit fit_dimension(const std::vector<std::uint64_t>& counts, double q) {
  std::vector<double> xs, ys;
  for (std::size_t m = 0; m < counts.size(); ++m)
    if (counts[m] > 0) {
      xs.push_back(static_cast<double>(m + 1));
      ys.push_back(std::log(static_cast<double>(counts[m])) / std::log(q));
    }
  DimensionFit fit;
  if (xs.size() < 2) return fit;
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= xs.size();
  my /= xs.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  for (std::size_t i = 0; i < xs.size(); ++i) fit.residuals.push_back(ys[i] - fit.slope * xs[i] - fit.intercept);
  fit.valid = true;
  return fit;
}

AdlvReport enumerate_and_count(const Matrix& b, const AdlvCondition& c, AdlvLevel level, std::int64_t L, int p, int e,
                               int ladder, const AdlvOptions& opt) {
  if (!b.square()) throw DimensionMismatch("b must be square");
  if (ladder < 1 || L < 0) throw PreconditionError("ladder and length bound must be non-negative");
  if (c.criterion != AdlvCriterion::IwahoriY && static_cast<int>(c.mu.size()) != b.rows())
    throw DimensionMismatch("mu has the wrong rank");
  if (c.criterion == AdlvCriterion::IwahoriY && level != AdlvLevel::I)
    throw PreconditionError("the Iwahori criterion needs level I");
  const int n = b.rows();
  AdlvReport rep;
  rep.condition = c;
  rep.level = level;
  rep.length_bound = L;
  rep.p = p;
  rep.e = e;
  rep.ladder = ladder;
  auto cells = adlv_cells(n, level, L);

  std::uint64_t planned = 0;
  for (int m = 1; m <= ladder; ++m) {
    std::uint64_t size = FiniteField::get(p, e, m).size();
    for (const auto& cell : cells) {
      std::uint64_t pts = ipow(size, cell.dimension());
      planned = pts > UINT64_MAX - planned ? UINT64_MAX : planned + pts;
    }
  }
  if (planned > opt.budget && !opt.force) throw BudgetExceeded("enumeration exceeds the point budget");
  unsigned threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());

  for (const auto& cell : cells) rep.cells.push_back({cell.w, cell.dimension(), {}, {}});
  for (int m = 1; m <= ladder; ++m) {
    const FiniteField& F = FiniteField::get(p, e, m);
    Matrix bm = embed_prime_field(b, F);
    std::optional<Matrix> binv;
    if (n <= 3 && exact_laurent(bm)) {
      Matrix inv = bm.inverse();
      if (exact_laurent(inv)) binv = inv;
    }
    std::uint64_t tot = 0, tot_leq = 0;
    for (std::size_t k = 0; k < cells.size(); ++k) {
      Tally t = count_cell(bm, binv, c, cells[k], threads, opt.generic);
      rep.cells[k].counts.push_back(t.exact);
      if (c.criterion != AdlvCriterion::IwahoriY) rep.cells[k].counts_leq.push_back(t.leq);
      tot += t.exact;
      tot_leq += t.leq;
      rep.points_tested += ipow(F.size(), cells[k].dimension());
    }
    rep.totals.push_back(tot);
    if (c.criterion != AdlvCriterion::IwahoriY) rep.totals_leq.push_back(tot_leq);
  }
  double q = std::pow(static_cast<double>(p), e);
  rep.fit = fit_dimension(rep.totals, q);
  if (c.criterion != AdlvCriterion::IwahoriY) {
    rep.fit_leq = fit_dimension(rep.totals_leq, q);
    try {
      Matrix b1 = embed_prime_field(b, FiniteField::get(p, e, 1));
      rep.formula = dim_formula(c.mu, newton_point(b1));
    } catch (const PreconditionError&) {
    } catch (const PrecisionLoss&) {
    }
  }
  return rep;
}

std::int64_t rank_jb(const RationalCoweight& nu) {
  std::map<Rational, std::int64_t> mult;
  for (const auto& v : nu) ++mult[v];
  std::int64_t r = 0;
  for (const auto& [slope, cnt] : mult) {
    std::int64_t h = static_cast<std::int64_t>(denominator(slope));
    if (cnt % h != 0) throw PreconditionError("slope multiplicity not divisible by its denominator");
    r += cnt / h;
  }
  return r;
}

Rational dim_formula(const Coweight& mu, const RationalCoweight& nu) {
  if (mu.size() != nu.size()) throw DimensionMismatch("mu and nu have different ranks");
  RationalCoweight m = to_rational(dominant_representative(mu));
  RationalCoweight v = dominant_representative(nu);
  if (!dominance_leq(v, m)) throw PreconditionError("nu is not below mu");
  RationalCoweight diff(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) diff[i] = m[i] - v[i];
  Rational d = pair_rho(diff) - Rational(static_cast<std::int64_t>(mu.size()) - rank_jb(v), 2);
  if (d < 0 || denominator(d) != 1) throw PreconditionError("formula value is not a non-negative integer");
  return d;
}

std::int64_t dim_lower_bound_iwahori(const AffineWeyl& y, const RationalCoweight& nu, std::int64_t chain_len) {
  Rational tr = pair_two_rho(dominant_representative(nu));
  if (denominator(tr) != 1) throw PreconditionError("<2rho, nu> is not integral");
  return length(y) - static_cast<std::int64_t>(numerator(tr)) - chain_len;
}

}  // namespace shtuka
