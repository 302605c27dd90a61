#include "shtuka/adlv.hpp"
#include "shtuka/errors.hpp"
#include "shtuka/parse.hpp"
#include "shtuka/selftest.hpp"
#include "shtuka/slope_divide.hpp"
#include "shtuka/version.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace shtuka;

namespace {

std::vector<std::string> rat_strings(const RationalCoweight& v) {
  std::vector<std::string> out;
  for (const auto& r : v) out.push_back(to_string(r));
  return out;
}

RationalCoweight rat_parse(const std::vector<std::string>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
  return parse_rational_coweight(s + "]");
}

py::dict certificate(const FundamentalAlcoveCertificate& c) {
  py::dict d;
  d["x"] = c.x.to_string();
  d["parabolic"] = c.parabolic.to_string();
  d["conjugator"] = perm_cycles_string(c.conjugator);
  d["length"] = length(c.x);
  d["ok"] = c.ok();
  return d;
}

py::dict csd(const CsdReport& r) {
  py::list conds;
  for (const auto& c : r.conditions) {
    py::dict d;
    d["condition"] = std::string(1, c.condition);
    d["index"] = c.index;
    d["ok"] = c.ok;
    d["detail"] = c.detail;
    conds.append(d);
  }
  py::dict d;
  d["ok"] = r.ok;
  d["conditions"] = conds;
  return d;
}

}  // namespace

PYBIND11_MODULE(_shtuka, m) {
  m.attr("__version__") = kVersion;
  static py::exception<PreconditionError> precondition(m, "PreconditionError", PyExc_ValueError);
  static py::exception<PrecisionLoss> precision(m, "PrecisionLoss", PyExc_ArithmeticError);
  static py::exception<ParseError> parse(m, "ParseError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ParseError& e) {
      PyErr_SetString(parse.ptr(), e.what());
    } catch (const PrecisionLoss& e) {
      PyErr_SetString(precision.ptr(), e.what());
    } catch (const PreconditionError& e) {
      PyErr_SetString(precondition.ptr(), e.what());
    }
  });

  m.def("set_default_precision", &set_default_precision);
  m.def("default_precision", &default_precision);

  m.def(
      "invariants",
      [](const std::string& matrix, const std::string& field) {
        Matrix g = parse_matrix(matrix, parse_field(field));
        py::dict d;
        d["hodge"] = hodge_point(g);
        d["newton"] = rat_strings(newton_point(g));
        d["kappa"] = kottwitz(g);
        d["mazur"] = mazur_check(g);
        d["iwahori_cell"] = iwahori_cell(g).to_string();
        return d;
      },
      py::arg("matrix"), py::arg("field") = "p=2");

  m.def(
      "weyl",
      [](const std::string& element) {
        AffineWeyl x = parse_affine_weyl(element);
        py::dict d;
        d["length"] = length(x);
        d["kappa"] = x.kappa();
        d["newton"] = rat_strings(newton_point_of_weyl(x));
        d["reduced_word"] = reduced_word(x).letters;
        return d;
      },
      py::arg("element"));
  m.def(
      "bruhat_leq", [](const std::string& a, const std::string& b) {
        return bruhat_leq(parse_affine_weyl(a), parse_affine_weyl(b));
      });

  m.def(
      "find_fundamental_alcoves",
      [](const std::vector<std::string>& newton, std::int64_t kappa) {
        py::list out;
        for (const auto& c : find_fundamental_alcoves({dominant_representative(rat_parse(newton)), kappa}))
          out.append(certificate(c));
        return out;
      },
      py::arg("newton"), py::arg("kappa"));
  m.def(
      "standard_representative",
      [](const std::vector<std::string>& newton, std::int64_t kappa) {
        return standard_representative({dominant_representative(rat_parse(newton)), kappa}).to_string();
      },
      py::arg("newton"), py::arg("kappa"));
  m.def(
      "is_p_fundamental",
      [](const std::string& element, const std::string& parabolic) {
        AffineWeyl x = parse_affine_weyl(element);
        return certificate(is_p_fundamental(x, parse_parabolic(parabolic, x.n())));
      },
      py::arg("element"), py::arg("parabolic"));

  m.def(
      "slope_division",
      [](const std::string& matrix, const std::string& element, const std::string& parabolic, std::int64_t d,
         const std::string& field) {
        AffineWeyl x = parse_affine_weyl(element);
        auto r = slope_division(parse_matrix(matrix, parse_field(field)), x, parse_parabolic(parabolic, x.n()), d);
        py::dict out;
        out["h"] = r.h.to_string();
        out["m"] = r.m.to_string();
        out["nbar"] = r.nbar.to_string();
        out["iterations"] = r.iterations;
        out["cap"] = r.cap;
        out["residual_valuation"] = r.residual_valuation;
        return out;
      },
      py::arg("matrix"), py::arg("element"), py::arg("parabolic"), py::arg("d") = 8, py::arg("field") = "p=2");
  m.def(
      "trivialize",
      [](const std::string& matrix, const std::string& element, const std::string& parabolic, std::int64_t d,
         const std::string& field) {
        AffineWeyl x = parse_affine_weyl(element);
        auto r = trivialize_unipotent(parse_matrix(matrix, parse_field(field)), x, parse_parabolic(parabolic, x.n()), d);
        py::dict out;
        out["h"] = r.h.to_string();
        out["iterations"] = r.iterations;
        out["l0"] = r.l0;
        out["residual_valuation"] = r.residual_valuation;
        return out;
      },
      py::arg("matrix"), py::arg("element"), py::arg("parabolic"), py::arg("d") = 8, py::arg("field") = "p=2");

  m.def(
      "csd_check_glr",
      [](const std::string& matrix, const std::vector<int>& blocks, const std::vector<std::int64_t>& slopes,
         std::int64_t period, const std::string& field) {
        return csd(csd_check_glr({parse_matrix(matrix, parse_field(field)), blocks, slopes, period}));
      },
      py::arg("matrix"), py::arg("blocks"), py::arg("slopes"), py::arg("period"), py::arg("field") = "p=2");
  m.def(
      "csd_check_zink",
      [](const std::string& matrix, const std::string& parabolic, const Coweight& mu, std::int64_t period,
         const std::string& field) {
        Matrix A = parse_matrix(matrix, parse_field(field));
        return csd(csd_check_zink(A, parse_parabolic(parabolic, A.rows()), mu, period));
      },
      py::arg("matrix"), py::arg("parabolic"), py::arg("mu"), py::arg("period"), py::arg("field") = "p=2");

  m.def(
      "adlv_count",
      [](const std::string& b, const Coweight& mu, const std::string& level, std::int64_t max_length, int ladder, int p,
         int e, bool leq) {
        AdlvCondition c{leq ? AdlvCriterion::LeqMu : AdlvCriterion::ExactMu, mu, std::nullopt};
        AdlvLevel lv = level == "I" ? AdlvLevel::I : AdlvLevel::K0;
        if (level != "I" && level != "K0") throw ParseError("level must be K0 or I");
        auto r = enumerate_and_count(parse_matrix(b, FiniteField::prime(p)), c, lv, max_length, p, e, ladder);
        py::list cells;
        for (const auto& cell : r.cells) {
          py::dict d;
          d["w"] = cell.w.to_string();
          d["dimension"] = cell.dimension;
          d["counts"] = cell.counts;
          cells.append(d);
        }
        py::dict out;
        out["cells"] = cells;
        out["totals"] = r.totals;
        out["fit"] = r.fit.valid ? py::cast(r.fit.slope) : py::none();
        out["formula"] = r.formula ? py::cast(to_string(*r.formula)) : py::none();
        return out;
      },
      py::arg("b"), py::arg("mu"), py::arg("level") = "K0", py::arg("max_length") = 4, py::arg("ladder") = 2,
      py::arg("p") = 2, py::arg("e") = 1, py::arg("leq") = false);

  m.def(
      "dim_formula", [](const Coweight& mu, const std::vector<std::string>& nu) { return to_string(dim_formula(mu, rat_parse(nu))); },
      py::arg("mu"), py::arg("newton"));
  m.def(
      "rank_jb", [](const std::vector<std::string>& nu) { return rank_jb(rat_parse(nu)); }, py::arg("newton"));
  m.def(
      "newton_chain_length",
      [](const Coweight& mu, const std::vector<std::string>& nu) { return newton_chain_length(mu, rat_parse(nu)); },
      py::arg("mu"), py::arg("newton"));
  m.def("conjugation_bound", &conjugation_bound, py::arg("mu"));

  m.def(
      "run_acceptance",
      [](std::uint64_t seed) {
        py::list out;
        for (const auto& r : run_acceptance(seed)) {
          py::dict d;
          d["id"] = r.id;
          d["title"] = r.title;
          d["pass"] = r.pass;
          d["detail"] = r.detail;
          d["seconds"] = r.seconds;
          out.append(d);
        }
        return out;
      },
      py::arg("seed") = 20240601);
}
