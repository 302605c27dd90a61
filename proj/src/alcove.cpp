#include "shtuka/alcove.hpp"

#include "shtuka/errors.hpp"

#include <algorithm>
#include <functional>

namespace shtuka {

FundamentalAlcoveCertificate is_p_fundamental(const AffineWeyl& x, const ParabolicSpec& P) {
  if (x.n() != P.n()) throw DimensionMismatch("alcove and parabolic rank differ");
  FundamentalAlcoveCertificate c;
  c.x = x;
  c.parabolic = P;
  c.conjugator = P.conjugator();
  const int n = x.n();
  c.in_levi = true;
  for (int i = 0; i < n; ++i)
    if (P.block_of(x.w()[i]) != P.block_of(i)) c.in_levi = false;
  c.fixes_im = c.contracts_n = c.contracts_nbar = true;
  AffineWeyl xi = x.inverse();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      AffineRoot a{i, j, min_positive_level(i, j)};
      RootPart part = P.part(i, j);
      if (part == RootPart::M || part == RootPart::N) {
        RootWitness wt{a, x.act(a), false, false};
        wt.ok = is_positive(wt.image);
        c.witnesses.push_back(wt);
        if (!wt.ok) (part == RootPart::M ? c.fixes_im : c.contracts_n) = false;
      }
      if (part == RootPart::M || part == RootPart::Nbar) {
        RootWitness wt{a, xi.act(a), true, false};
        wt.ok = is_positive(wt.image);
        c.witnesses.push_back(wt);
        if (!wt.ok) (part == RootPart::M ? c.fixes_im : c.contracts_nbar) = false;
      }
    }
  return c;
}

ParabolicSpec centralizer_levi(const RationalCoweight& nu) {
  if (!is_dominant(nu)) throw PreconditionError("centralizer Levi needs a dominant Newton point");
  std::vector<int> blocks;
  for (std::size_t i = 0; i < nu.size(); ++i) {
    if (i > 0 && nu[i] == nu[i - 1]) ++blocks.back();
    else blocks.push_back(1);
  }
  return ParabolicSpec::standard(blocks);
}

ParabolicSpec enlarge_to_centralizer(const AffineWeyl& x, const ParabolicSpec& P) {
  RationalCoweight nu = newton_vector(x);
  auto idx = P.block_indices();
  std::vector<int> blocks;
  Rational prev;
  for (std::size_t b = 0; b < idx.size(); ++b) {
    Rational s = nu[idx[b].front()];
    for (int i : idx[b])
      if (nu[i] != s) throw PreconditionError("Newton vector is not central in the Levi");
    if (b > 0 && s == prev) blocks.back() += static_cast<int>(idx[b].size());
    else blocks.push_back(static_cast<int>(idx[b].size()));
    prev = s;
  }
  return ParabolicSpec(blocks, P.conjugator());
}

AffineWeyl standard_representative(const SigmaInvariants& inv) {
  const RationalCoweight& nu = inv.newton;
  if (!is_dominant(nu)) throw PreconditionError("Newton point must be dominant");
  if (coordinate_sum(nu) != Rational(inv.kappa)) throw PreconditionError("Newton point and Kottwitz class disagree");
  const int n = static_cast<int>(nu.size());
  Perm w(n);
  Coweight t(n, 0);
  ParabolicSpec M = centralizer_levi(nu);
  int start = 0;
  for (int h : M.blocks()) {
    Rational total = nu[start] * h;
    if (!is_integral({total})) throw PreconditionError("slope multiplicity is not divisible by its denominator");
    auto c = static_cast<std::int64_t>(numerator(total));
    // tau_h^c with tau_h e_1 = z e_h, tau_h e_j = e_{j-1}
    Perm tw(h);
    Coweight tt(h, 0);
    for (int i = 0; i < h; ++i) tw[i] = (i + h - 1) % h;
    tt[0] = 1;
    AffineWeyl blk = AffineWeyl(tw, tt).pow(c);
    for (int i = 0; i < h; ++i) {
      w[start + i] = start + blk.w()[i];
      t[start + i] = blk.t()[i];
    }
    start += h;
  }
  AffineWeyl x(w, t);
  if (!verify_standard_representative(x, inv)) throw std::logic_error("standard representative failed verification");
  return x;
}

bool verify_standard_representative(const AffineWeyl& x, const SigmaInvariants& inv) {
  if (x.n() != static_cast<int>(inv.newton.size())) return false;
  if (!is_dominant(inv.newton)) return false;
  ParabolicSpec M = centralizer_levi(inv.newton);
  for (int i = 0; i < x.n(); ++i)
    if (M.block_of(x.w()[i]) != M.block_of(i)) return false;
  if (length_on(x, M.mask(RootPart::M)) != 0) return false;
  return newton_vector(x) == inv.newton && x.kappa() == inv.kappa;
}

std::vector<FundamentalAlcoveCertificate> find_fundamental_alcoves(const SigmaInvariants& inv) {
  AffineWeyl xb = standard_representative(inv);
  ParabolicSpec M = centralizer_levi(inv.newton);
  const int n = xb.n();
  std::vector<FundamentalAlcoveCertificate> out;
  for (const Perm& w : all_perms(n)) {
    bool minimal = true;
    for (int a = 0; a + 1 < n && minimal; ++a)
      if (M.block_of(a) == M.block_of(a + 1) && w[a] > w[a + 1]) minimal = false;
    if (!minimal) continue;
    AffineWeyl wf = AffineWeyl::finite(w);
    AffineWeyl x = wf.inverse() * xb * wf;
    ParabolicSpec P(M.blocks(), w);
    FundamentalAlcoveCertificate c = is_p_fundamental(x, P);
    if (!c.ok()) continue;
    ParabolicSpec Pe = enlarge_to_centralizer(x, P);
    if (!(Pe == P)) {
      c = is_p_fundamental(x, Pe);
      if (!c.ok()) continue;
    }
    c.conjugator = w;
    out.push_back(std::move(c));
  }
  return out;
}

std::int64_t contraction_exponent(const AffineWeyl& x, const ParabolicSpec& P, std::int64_t d, RootPart part) {
  if (part == RootPart::M) throw PreconditionError("contraction exponent is defined for N and Nbar");
  const int n = x.n();
  // level of (i,j) under x^l grows linearly in l once l is a multiple of the order
  AffineWeyl step = part == RootPart::N ? x : x.inverse();
  for (std::int64_t l = 0; l <= 64 * (d + 2) * n; ++l) {
    AffineWeyl y = step.pow(l);
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      for (int j = 0; j < n && ok; ++j) {
        if (i == j || P.part(i, j) != part) continue;
        AffineRoot a = y.act({i, j, min_positive_level(i, j)});
        if (a.k < d + (a.i > a.j ? 1 : 0)) ok = false;
      }
    if (ok) return l;
  }
  throw NotFundamental("element does not contract the unipotent part");
}

std::vector<SigmaInvariants> enumerate_newton_points(int n, int max_den, std::int64_t max_slope,
                                                     std::int64_t max_kappa) {
  std::vector<Rational> slopes;
  for (int h = 1; h <= max_den; ++h)
    for (std::int64_t a = -max_slope * h; a <= max_slope * h; ++a) {
      Rational s(a, h);
      if (denominator(s) == h) slopes.push_back(s);
    }
  std::sort(slopes.begin(), slopes.end(), std::greater<>());
  std::vector<SigmaInvariants> out;
  RationalCoweight cur;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (static_cast<int>(cur.size()) == n) {
      Rational k = coordinate_sum(cur);
      if (abs(k) <= max_kappa) out.push_back({cur, static_cast<std::int64_t>(numerator(k))});
      return;
    }
    for (std::size_t i = from; i < slopes.size(); ++i) {
      int h = static_cast<int>(denominator(slopes[i]));
      for (int mult = h; static_cast<int>(cur.size()) + mult <= n; mult += h) {
        cur.insert(cur.end(), mult, slopes[i]);
        rec(i + 1);
        cur.resize(cur.size() - mult);
      }
    }
  };
  rec(0);
  return out;
}

Matrix random_part(const FiniteField& F, const ParabolicSpec& P, SubgroupSpec::Kind kind, std::mt19937_64& rng,
                   std::int64_t deg) {
  const int n = P.n();
  Matrix g = Matrix::identity(F, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      RootPart part = i == j ? RootPart::M : P.part(i, j);
      std::int64_t v = i > j ? 1 : 0;
      bool fill = false;
      if (kind == SubgroupSpec::Kind::IM) fill = part == RootPart::M;
      if (kind == SubgroupSpec::Kind::IN) fill = part == RootPart::N;
      if (kind == SubgroupSpec::Kind::INbar) fill = part == RootPart::Nbar;
      if (!fill) continue;
      if (i == j)
        g(i, j) = Series::constant(F, F.random_nonzero(rng)) + random_series(F, rng, 1, deg);
      else
        g(i, j) = random_series(F, rng, v, deg);
    }
  return g;
}

}  // namespace shtuka
