#include "shtuka/adlv.hpp"
#include "shtuka/errors.hpp"
#include "shtuka/parse.hpp"
#include "shtuka/selftest.hpp"
#include "shtuka/slope_divide.hpp"
#include "shtuka/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>

using json = nlohmann::ordered_json;
using namespace shtuka;

namespace {

struct RunConfig {
  std::string group;
  std::string field = "p=2,e=1,m=1";
  std::int64_t precision = 0;
  std::uint64_t seed = 20240601;
  std::string output;
  bool pretty = false;
};

struct Emitter {
  const RunConfig& cfg;
  std::ostream& out;

  void emit(json inputs, json outputs) const {
    json line;
    line["command"] = inputs["command"];
    inputs.erase("command");
    line["inputs"] = std::move(inputs);
    line["outputs"] = std::move(outputs);
    line["provenance"] = {{"seed", cfg.seed}, {"precision", default_precision()}, {"version", kVersion}};
    out << (cfg.pretty ? line.dump(2) : line.dump()) << "\n";
  }
};

json coweight_json(const Coweight& v) { return json(v); }

json rational_json(const RationalCoweight& v) {
  json a = json::array();
  for (const auto& r : v) a.push_back(to_string(r));
  return a;
}

int group_rank(const RunConfig& cfg, int fallback) {
  if (cfg.group.empty()) return fallback;
  if (cfg.group.rfind("gl", 0) != 0) throw ParseError("group must be gl2..gl8: " + cfg.group);
  int n = 0;
  try {
    n = std::stoi(cfg.group.substr(2));
  } catch (const std::exception&) {
    throw ParseError("group must be gl2..gl8: " + cfg.group);
  }
  if (n < 1 || n > 8) throw ParseError("group must be gl2..gl8: " + cfg.group);
  if (fallback && n != fallback) throw DimensionMismatch("input rank does not match " + cfg.group);
  return n;
}

json certificate_json(const FundamentalAlcoveCertificate& c) {
  json w = json::array();
  for (const auto& r : c.witnesses)
    if (!r.ok)
      w.push_back({{"root", {r.root.i + 1, r.root.j + 1, r.root.k}}, {"image", {r.image.i + 1, r.image.j + 1, r.image.k}}});
  return {{"x", c.x.to_string()},
          {"parabolic", c.parabolic.to_string()},
          {"conjugator", perm_cycles_string(c.conjugator)},
          {"length", length(c.x)},
          {"in_levi", c.in_levi},
          {"fixes_IM", c.fixes_im},
          {"contracts_IN", c.contracts_n},
          {"contracts_INbar", c.contracts_nbar},
          {"ok", c.ok()},
          {"failing_roots", w}};
}

json report_json(const CsdReport& r) {
  json conds = json::array();
  for (const auto& c : r.conditions)
    conds.push_back({{"condition", std::string(1, c.condition)}, {"index", c.index}, {"ok", c.ok}, {"detail", c.detail}});
  return {{"ok", r.ok}, {"conditions", conds}};
}

const char* level_name(AdlvLevel l) { return l == AdlvLevel::K0 ? "K0" : "I"; }

json fit_json(const DimensionFit& f) {
  if (!f.valid) return nullptr;
  return {{"slope", f.slope}, {"intercept", f.intercept}, {"residuals", f.residuals}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local shtukas, fundamental alcoves and affine Deligne-Lusztig varieties for GL_n"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_option("--group", cfg.group, "gl2 ... gl8");
  app.add_option("--field", cfg.field, "field spec p=..,e=..,m=..[,mod=..]");
  app.add_option("--precision", cfg.precision, "working precision (overrides SHTUKA_PRECISION)");
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_option("-o,--output", cfg.output, "write JSON lines here instead of stdout");
  app.add_flag("--pretty", cfg.pretty, "indented output");
  app.set_version_flag("--version", kVersion);

  std::string matrix, element, parabolic, newton, mu, blocks, slopes, y, b;
  std::int64_t kappa = 0, target = 8, period = 1, max_length = 4, chain_len = -1;
  int ladder = 1, p = 2, e = 1;
  std::string level = "K0", criterion = "exact";
  bool force = false, zink = false;

  auto* inv = app.add_subcommand("invariants", "Hodge, Newton and Kottwitz invariants of a matrix");
  inv->add_option("--matrix", matrix)->required();

  auto* weyl = app.add_subcommand("weyl", "length, Newton point and reduced word of an affine Weyl element");
  weyl->add_option("--element", element)->required();
  std::string other;
  weyl->add_option("--bruhat-leq", other, "also test element <= other");

  auto* alcove = app.add_subcommand("alcove", "fundamental alcoves");
  alcove->require_subcommand(1);
  alcove->fallthrough();
  auto* afind = alcove->add_subcommand("find", "all fundamental alcoves of a sigma-conjugacy class");
  afind->add_option("--newton", newton)->required();
  afind->add_option("--kappa", kappa)->required();
  auto* acheck = alcove->add_subcommand("check", "test x against a parabolic");
  acheck->add_option("--element", element)->required();
  acheck->add_option("--parabolic", parabolic)->required();

  auto* sd = app.add_subcommand("slope-divide", "sigma-conjugate g in IxI into x I_M I_Nbar");
  sd->add_option("--matrix", matrix)->required();
  sd->add_option("--element", element)->required();
  sd->add_option("--parabolic", parabolic)->required();
  sd->add_option("--target", target);

  auto* tr = app.add_subcommand("trivialize", "sigma-conjugate x nbar to x");
  tr->add_option("--matrix", matrix)->required();
  tr->add_option("--element", element)->required();
  tr->add_option("--parabolic", parabolic)->required();
  tr->add_option("--target", target);

  auto* csd = app.add_subcommand("csd-check", "complete slope divisibility conditions");
  csd->add_option("--matrix", matrix)->required();
  csd->add_option("--blocks", blocks)->required();
  csd->add_option("--slopes", slopes, "t_1 > ... > t_e");
  csd->add_option("--period", period);
  csd->add_flag("--zink", zink, "check z^-mu phi^s instead");
  csd->add_option("--mu", mu);

  auto* adlv = app.add_subcommand("adlv", "affine Deligne-Lusztig varieties");
  adlv->require_subcommand(1);
  adlv->fallthrough();
  auto* acount = adlv->add_subcommand("count", "point counts cell by cell");
  acount->add_option("--b", b)->required();
  acount->add_option("--mu", mu);
  acount->add_option("--y", y);
  acount->add_option("--criterion", criterion)->check(CLI::IsMember({"exact", "leq", "iwahori"}));
  acount->add_option("--level", level)->check(CLI::IsMember({"K0", "I"}));
  acount->add_option("--max-length", max_length);
  acount->add_option("--field-ladder", ladder);
  acount->add_option("--p", p);
  acount->add_option("--e", e);
  acount->add_flag("--force", force, "ignore the point budget");
  auto* adim = adlv->add_subcommand("dim", "dimension formulas");
  adim->add_option("--mu", mu);
  adim->add_option("--newton", newton)->required();
  adim->add_option("--element", element, "y for the Iwahori lower bound");
  adim->add_option("--chain-len", chain_len);

  auto* st = app.add_subcommand("selftest", "run the acceptance suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& ex) {
    return app.exit(ex);
  } catch (const CLI::CallForVersion& ex) {
    return app.exit(ex);
  } catch (const CLI::ParseError& ex) {
    app.exit(ex);
    return 2;
  }

  std::ofstream file;
  if (!cfg.output.empty()) {
    file.open(cfg.output);
    if (!file) {
      std::cerr << "cannot open " << cfg.output << "\n";
      return 4;
    }
  }
  std::ostream& out = cfg.output.empty() ? std::cout : file;
  Emitter em{cfg, out};

  try {
    if (cfg.precision > 0) set_default_precision(cfg.precision);
    const FiniteField& F = parse_field(cfg.field);
    json in{{"command", ""}, {"group", cfg.group}, {"field", F.spec_string()}};

    if (*inv) {
      Matrix g = parse_matrix(matrix, F);
      group_rank(cfg, g.rows());
      in["command"] = "invariants";
      in["matrix"] = g.to_string();
      em.emit(in, {{"hodge", coweight_json(hodge_point(g))},
                   {"newton", rational_json(newton_point(g))},
                   {"kappa", kottwitz(g)},
                   {"mazur", mazur_check(g)},
                   {"iwahori_cell", iwahori_cell(g).to_string()}});
    } else if (*weyl) {
      AffineWeyl x = parse_affine_weyl(element);
      group_rank(cfg, x.n());
      in["command"] = "weyl";
      in["element"] = x.to_string();
      auto rw = reduced_word(x);
      json outj{{"length", length(x)},
                {"kappa", x.kappa()},
                {"newton", rational_json(newton_point_of_weyl(x))},
                {"translation", coweight_json(x.translation_left())},
                {"reduced_word", rw.letters},
                {"tau", rw.tau.to_string()}};
      if (!other.empty()) {
        AffineWeyl o = parse_affine_weyl(other);
        in["bruhat_leq"] = o.to_string();
        outj["bruhat_leq"] = bruhat_leq(x, o);
      }
      em.emit(in, outj);
    } else if (*afind) {
      RationalCoweight nu = parse_rational_coweight(newton);
      group_rank(cfg, static_cast<int>(nu.size()));
      in["command"] = "alcove find";
      in["newton"] = rational_json(nu);
      in["kappa"] = kappa;
      SigmaInvariants si{dominant_representative(nu), kappa};
      json certs = json::array();
      for (const auto& c : find_fundamental_alcoves(si)) certs.push_back(certificate_json(c));
      em.emit(in, {{"standard_representative", standard_representative(si).to_string()}, {"certificates", certs}});
    } else if (*acheck) {
      AffineWeyl x = parse_affine_weyl(element);
      int n = group_rank(cfg, x.n());
      ParabolicSpec P = parse_parabolic(parabolic, n);
      in["command"] = "alcove check";
      in["element"] = x.to_string();
      in["parabolic"] = P.to_string();
      em.emit(in, certificate_json(is_p_fundamental(x, P)));
    } else if (*sd || *tr) {
      Matrix g = parse_matrix(matrix, F);
      AffineWeyl x = parse_affine_weyl(element);
      if (x.n() != g.rows()) throw DimensionMismatch("element and matrix ranks differ");
      int n = group_rank(cfg, g.rows());
      ParabolicSpec P = parse_parabolic(parabolic, n);
      in["matrix"] = g.to_string();
      in["element"] = x.to_string();
      in["parabolic"] = P.to_string();
      in["target"] = target;
      if (*sd) {
        in["command"] = "slope-divide";
        auto r = slope_division(g, x, P, target);
        em.emit(in, {{"h", r.h.to_string()},
                     {"m", r.m.to_string()},
                     {"nbar", r.nbar.to_string()},
                     {"iterations", r.iterations},
                     {"cap", r.cap},
                     {"residual_valuation", r.residual_valuation}});
      } else {
        in["command"] = "trivialize";
        auto r = trivialize_unipotent(g, x, P, target);
        em.emit(in, {{"h", r.h.to_string()},
                     {"iterations", r.iterations},
                     {"l0", r.l0},
                     {"residual_valuation", r.residual_valuation}});
      }
    } else if (*csd) {
      Matrix A = parse_matrix(matrix, F);
      int n = group_rank(cfg, A.rows());
      in["command"] = "csd-check";
      in["matrix"] = A.to_string();
      in["period"] = period;
      if (zink) {
        ParabolicSpec P = parse_parabolic(blocks, n);
        Coweight m = parse_coweight(mu);
        in["parabolic"] = P.to_string();
        in["mu"] = coweight_json(m);
        em.emit(in, report_json(csd_check_zink(A, P, m, period)));
      } else {
        Coweight bl = parse_coweight("[" + blocks + "]");
        LocalShtukaData D{A, std::vector<int>(bl.begin(), bl.end()), parse_coweight(slopes), period};
        in["blocks"] = bl;
        in["slopes"] = coweight_json(D.slopes);
        em.emit(in, report_json(csd_check_glr(D)));
      }
    } else if (*acount) {
      const FiniteField& Fp = FiniteField::prime(p);
      Matrix bm = parse_matrix(b, Fp);
      group_rank(cfg, bm.rows());
      AdlvCondition cond;
      cond.criterion = criterion == "exact" ? AdlvCriterion::ExactMu
                       : criterion == "leq" ? AdlvCriterion::LeqMu
                                            : AdlvCriterion::IwahoriY;
      if (cond.criterion == AdlvCriterion::IwahoriY) {
        if (y.empty()) throw PreconditionError("--y is required for the Iwahori criterion");
        cond.y = parse_affine_weyl(y);
      } else {
        if (mu.empty()) throw PreconditionError("--mu is required");
        cond.mu = parse_coweight(mu);
      }
      AdlvLevel lv = level == "K0" ? AdlvLevel::K0 : AdlvLevel::I;
      AdlvOptions opt;
      opt.force = force;
      AdlvReport r = enumerate_and_count(bm, cond, lv, max_length, p, e, ladder, opt);
      in = {{"command", "adlv count"}, {"group", cfg.group}, {"b", bm.to_string()}, {"criterion", criterion}};
      if (cond.y) in["y"] = cond.y->to_string();
      else in["mu"] = coweight_json(cond.mu);
      in["level"] = level;
      in["max_length"] = max_length;
      in["p"] = p;
      in["e"] = e;
      in["field_ladder"] = ladder;
      json cells = json::array();
      for (const auto& c : r.cells) {
        json cj{{"w", c.w.to_string()}, {"dimension", c.dimension}, {"counts", c.counts}};
        if (!c.counts_leq.empty()) cj["counts_leq"] = c.counts_leq;
        cells.push_back(cj);
      }
      json outj{{"level", level_name(r.level)},
                {"cells", cells},
                {"totals", r.totals},
                {"fit", fit_json(r.fit)},
                {"points_tested", r.points_tested}};
      if (!r.totals_leq.empty()) {
        outj["totals_leq"] = r.totals_leq;
        outj["fit_leq"] = fit_json(r.fit_leq);
      }
      outj["formula"] = r.formula ? json(to_string(*r.formula)) : json(nullptr);
      em.emit(in, outj);
    } else if (*adim) {
      RationalCoweight nu = parse_rational_coweight(newton);
      group_rank(cfg, static_cast<int>(nu.size()));
      in["command"] = "adlv dim";
      in["newton"] = rational_json(nu);
      json outj{{"rank_jb", rank_jb(nu)}};
      if (!mu.empty()) {
        Coweight m = parse_coweight(mu);
        in["mu"] = coweight_json(m);
        outj["dim_formula"] = to_string(dim_formula(m, nu));
        outj["chain_length"] = newton_chain_length(m, nu);
      }
      if (!element.empty()) {
        AffineWeyl yv = parse_affine_weyl(element);
        in["element"] = yv.to_string();
        if (chain_len < 0) throw PreconditionError("--chain-len is required with --element");
        in["chain_len"] = chain_len;
        outj["dim_lower_bound"] = dim_lower_bound_iwahori(yv, nu, chain_len);
        outj["codim_newton_stratum"] = "unknown";
      }
      em.emit(in, outj);
    } else if (*st) {
      auto results = run_acceptance(cfg.seed, [&](const CriterionResult& r) {
        em.emit({{"command", "selftest"}, {"criterion", r.id}},
                {{"title", r.title}, {"pass", r.pass}, {"detail", r.detail}, {"seconds", r.seconds}});
        std::cerr << format_result(r) << "\n";
      });
      std::cerr << format_summary(results) << "\n";
      for (const auto& r : results)
        if (!r.pass) return 1;
    }
  } catch (const ParseError& ex) {
    std::cerr << "parse error: " << ex.what() << "\n";
    return 2;
  } catch (const PrecisionLoss& ex) {
    std::cerr << "precision loss: " << ex.what() << "\n";
    return 3;
  } catch (const PreconditionError& ex) {
    std::cerr << "precondition violated: " << ex.what() << "\n";
    return 4;
  }
  return 0;
}
