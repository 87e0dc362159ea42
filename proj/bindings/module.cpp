// Python bindings over the main operations. Rationals cross the boundary as
// exact "p/q" strings.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "shiftword/correspond.hpp"
#include "shiftword/error.hpp"
#include "shiftword/generic.hpp"
#include "shiftword/inverse.hpp"
#include "shiftword/specparse.hpp"

namespace py = pybind11;
namespace sw = shiftword;

namespace {

sw::Rat rat(const std::string& text) { return sw::parse_rat(text); }

py::dict verify_dict(const sw::VerifyReport& rep) {
  py::dict d;
  d["passed"] = rep.passed;
  d["max_residual"] = sw::rat_str(rep.max_residual);
  d["worst"] = rep.worst.str();
  d["certified_error"] = sw::rat_str(rep.certified_error);
  py::list rows;
  for (const auto& row : rep.rows) {
    py::dict r;
    r["sigma"] = row.sigma.str();
    r["oracle"] = sw::rat_str(row.oracle_value);
    r["density"] = sw::rat_str(row.word_density);
    r["residual"] = sw::rat_str(row.residual);
    rows.append(std::move(r));
  }
  d["rows"] = std::move(rows);
  return d;
}

py::dict approx_dict(const sw::ApproxResult& r) {
  py::dict d;
  d["word"] = r.word.str();
  d["n"] = r.word.size();
  d["j"] = r.params.j;
  d["eps"] = sw::rat_str(r.params.eps);
  d["k"] = r.params.block_len.str();
  d["l"] = r.params.block_count.str();
  d["delta"] = sw::rat_str(r.params.delta);
  d["certified_error"] = sw::rat_str(r.certified_error);
  d["theoretical_bound"] = sw::rat_str(r.theoretical_bound);
  d["report"] = verify_dict(r.report);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "certified finite approximations of shift-invariant measures";

  py::register_exception<sw::Error>(m, "Error");

  py::class_<sw::MeasureOracle>(m, "Oracle")
      .def(py::init([](const std::string& spec) { return sw::parse_measure_spec(spec); }),
           py::arg("spec"))
      .def("query",
           [](const sw::MeasureOracle& self, const std::string& sigma, const std::string& delta) {
             return sw::rat_str(self.query(sw::Pattern(sigma), rat(delta)));
           },
           py::arg("sigma"), py::arg("delta") = "1/1000000")
      .def_property_readonly("exact", &sw::MeasureOracle::exact)
      .def_property_readonly("name", &sw::MeasureOracle::name);

  m.def("density", [](const std::string& word, const std::string& sigma) {
    return sw::rat_str(sw::density(sw::Word(word), sw::Pattern(sigma)));
  });
  m.def("occurrence_positions", [](const std::string& word, const std::string& sigma) {
    return sw::occurrence_positions(sw::Word(word), sw::Pattern(sigma));
  });
  m.def("prefix_frequency", [](const std::string& word, const std::string& sigma, size_t n) {
    return sw::rat_str(sw::prefix_frequency(sw::Word(word), sw::Pattern(sigma), n));
  });

  m.def("invariance_audit",
        [](const std::string& spec, unsigned depth, const std::string& delta) {
          const sw::AuditReport rep =
              sw::invariance_audit(sw::parse_measure_spec(spec), depth, rat(delta));
          py::dict d;
          d["passed"] = rep.passed;
          d["max_residual"] = sw::rat_str(rep.max_residual);
          d["violations"] = rep.violations.size();
          return d;
        },
        py::arg("spec"), py::arg("depth") = 3, py::arg("delta") = "1/1000000");

  m.def("fallback_params", [](unsigned j, const std::string& eps) {
    const sw::Params p = sw::fallback_params(j, rat(eps));
    py::dict d;
    d["k"] = p.block_len.str();
    d["l"] = p.block_count.str();
    d["delta"] = sw::rat_str(p.delta);
    return d;
  });

  m.def("approx",
        [](const std::string& spec, unsigned j, const std::string& eps, uint64_t budget,
           uint64_t pad, unsigned workers) {
          const sw::MeasureOracle oracle = sw::parse_measure_spec(spec);
          const sw::Rat eps_r = rat(eps);
          sw::BuildResult built =
              sw::build(oracle, j, pad ? eps_r / 2 : eps_r, budget, workers);
          py::dict d;
          d["ok"] = built.ok;
          d["best_error"] = sw::rat_str(built.best_error);
          if (built.ok) {
            sw::ApproxResult result = std::move(*built.approx);
            if (pad) result = sw::pad_to(result, pad, oracle, eps_r, workers);
            d["result"] = approx_dict(result);
          }
          return d;
        },
        py::arg("spec"), py::arg("j"), py::arg("eps"), py::arg("budget") = 1000000,
        py::arg("pad") = 0, py::arg("workers") = 1);

  m.def("verify",
        [](const std::string& word, const std::string& spec, unsigned j, const std::string& eps,
           const std::string& delta) {
          return verify_dict(
              sw::verify(sw::Word(word), sw::parse_measure_spec(spec), j, rat(eps), rat(delta)));
        },
        py::arg("word"), py::arg("spec"), py::arg("j"), py::arg("eps"),
        py::arg("delta") = "1/1048576");

  m.def("generic_bits",
        [](const std::string& spec, size_t n, uint64_t budget) {
          return sw::generic_bits(sw::parse_measure_spec(spec), n, budget).str();
        },
        py::arg("spec"), py::arg("n"), py::arg("budget") = 1000000);

  m.def("check_generic",
        [](const std::string& spec, unsigned j, const std::string& eps, uint64_t budget) {
          const sw::GenericReport rep =
              sw::check_generic(sw::parse_measure_spec(spec), j, rat(eps), budget);
          py::dict d;
          d["passed"] = rep.passed;
          d["n"] = rep.prefix_len;
          d["m_actual"] = rep.m_actual.str();
          d["m_universal"] = rep.m_universal.str();
          d["max_residual"] = sw::rat_str(rep.max_residual);
          d["prefix"] = rep.prefix ? rep.prefix->str() : std::string();
          return d;
        },
        py::arg("spec"), py::arg("j"), py::arg("eps"), py::arg("budget") = 1000000);

  m.def("m_universal", [](unsigned j, const std::string& eps) {
    return sw::m_universal(j, rat(eps)).str();
  });

  m.def("measure_from_approx",
        [](const std::string& spec, const std::string& sigma, const std::string& eps,
           uint64_t budget) {
          const sw::MeasureOracle oracle = sw::parse_measure_spec(spec);
          return sw::rat_str(sw::measure_from_approx(sw::build_provider(oracle, budget),
                                                     sw::Pattern(sigma), rat(eps)));
        },
        py::arg("spec"), py::arg("sigma"), py::arg("eps"), py::arg("budget") = 1000000);

  m.def("extract_subsequence",
        [](const std::vector<std::string>& words, const std::string& tol, unsigned max_j) {
          std::vector<sw::Word> ws;
          ws.reserve(words.size());
          for (const auto& w : words) ws.emplace_back(w);
          return sw::extract_subsequence(sw::density_table(ws, max_j), rat(tol));
        },
        py::arg("words"), py::arg("tol"), py::arg("max_j") = 2);

  m.def("build_zd",
        [](const std::string& spec, unsigned d, unsigned j, const std::string& eps,
           uint64_t budget) {
          const sw::ZdBuildResult r =
              sw::build_zd(sw::parse_lattice_spec(spec), d, j, rat(eps), budget);
          py::dict out;
          out["ok"] = r.ok;
          if (r.report) {
            out["k"] = r.report->block_side;
            out["L"] = r.report->copies;
            out["measured"] = sw::rat_str(r.report->measured);
            out["certified"] = sw::rat_str(r.report->certified);
            out["ledger_bound"] = sw::rat_str(r.report->ledger_bound);
            out["eps_met"] = r.report->eps_met;
            py::list boxes;
            for (const auto& box : r.model->boxes) {
              std::string bits;
              for (bool b : box) bits.push_back(b ? '1' : '0');
              boxes.append(bits);
            }
            out["boxes"] = std::move(boxes);
          }
          return out;
        },
        py::arg("spec"), py::arg("d"), py::arg("j"), py::arg("eps"), py::arg("budget") = 100000);
}
