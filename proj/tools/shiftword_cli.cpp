// Command-line front end: certified finite approximations of shift-invariant
// measures, generic-point streams, lattice-box models, and density tooling.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

#include "shiftword/correspond.hpp"
#include "shiftword/error.hpp"
#include "shiftword/generic.hpp"
#include "shiftword/inverse.hpp"
#include "shiftword/report.hpp"
#include "shiftword/specparse.hpp"

namespace sw = shiftword;

namespace {

constexpr uint64_t kDefaultBudget = 1000000;

int error_exit_code(const sw::Error& e) {
  switch (e.kind()) {
    case sw::ErrorKind::BudgetExceeded:
      return 2;
    case sw::ErrorKind::VerifyFailure:
    case sw::ErrorKind::AuditFailure:
    case sw::ErrorKind::GenericityFailure:
      return 1;
    default:
      return 3;  // parse / usage / domain
  }
}

void emit(const sw::RunReport& report, bool csv) {
  if (csv)
    report.render_csv(std::cout);
  else
    report.render(std::cout);
}

struct CommonFlags {
  std::string measure_file;
  unsigned workers = 1;
  bool csv = false;
  uint64_t budget = kDefaultBudget;
};

void attach_workers_csv(CLI::App* sub, CommonFlags& flags) {
  sub->add_option("--workers", flags.workers, "parallel verification workers")
      ->check(CLI::Range(1u, 64u));
  sub->add_flag("--csv", flags.csv, "emit the residual table alone as CSV");
}

int cmd_measure_check(const CommonFlags& flags, unsigned depth, const std::string& delta_text) {
  const sw::MeasureOracle m = sw::parse_measure_file(flags.measure_file);
  const sw::Rat delta = sw::parse_rat(delta_text);
  const sw::AuditReport audit = sw::invariance_audit(m, depth, delta);

  sw::RunReport report;
  report.command = "measure-check";
  report.add("measure", m.name());
  report.add("depth", std::to_string(depth));
  report.add("delta", sw::rat_str(delta));
  report.add("tolerance", sw::rat_str(audit.tolerance));
  report.add("max_residual", sw::rat_str(audit.max_residual));
  report.add("status", audit.passed ? "pass" : "fail");
  sw::ResidualTable table;
  table.header = {"sigma", "extend_residual", "shift_residual"};
  for (const auto& row : audit.rows)
    table.rows.push_back({sw::sigma_label(row.sigma.str()), sw::rat_str(row.extend_residual),
                          sw::rat_str(row.shift_residual)});
  report.table = std::move(table);
  report.exit_code = audit.passed ? 0 : 1;
  emit(report, flags.csv);
  return report.exit_code;
}

void add_verify_table(sw::RunReport& report, const sw::VerifyReport& verify) {
  sw::ResidualTable table;
  table.header = {"sigma", "oracle", "density", "residual"};
  for (const auto& row : verify.rows)
    table.rows.push_back({sw::sigma_label(row.sigma.str()), sw::rat_str(row.oracle_value),
                          sw::rat_str(row.word_density), sw::rat_str(row.residual)});
  report.table = std::move(table);
}

int cmd_approx(const CommonFlags& flags, unsigned j, const std::string& eps_text, uint64_t pad,
               const std::string& out_file) {
  const sw::MeasureOracle m = sw::parse_measure_file(flags.measure_file);
  const sw::Rat eps = sw::parse_rat(eps_text);

  sw::RunReport report;
  report.command = "approx";
  report.add("measure", m.name());
  report.add("j", std::to_string(j));
  report.add("eps", sw::rat_str(eps));
  report.add("budget", std::to_string(flags.budget));

  const sw::Rat build_eps = pad ? eps / 2 : eps;
  sw::BuildResult built = sw::build(m, j, build_eps, flags.budget, flags.workers);
  if (!built.ok) {
    report.add("status", "budget-exceeded");
    report.add("best_error", sw::rat_str(built.best_error));
    report.add("attempts", std::to_string(built.attempts));
    report.exit_code = 2;
    emit(report, flags.csv);
    return 2;
  }

  sw::ApproxResult result = std::move(*built.approx);
  if (pad) {
    report.add("pad", std::to_string(pad));
    report.add("pad_min_guaranteed", sw::pad_min_length(result, j, eps).str());
    result = sw::pad_to(result, pad, m, eps, flags.workers);
  }
  report.add("k", result.params.block_len.str());
  report.add("l", result.params.block_count.str());
  report.add("delta", sw::rat_str(result.params.delta));
  report.add("n", std::to_string(result.word.size()));
  report.add("certified_error", sw::rat_str(result.certified_error));
  report.add("theoretical_bound", sw::rat_str(result.theoretical_bound));
  report.add("status", "ok");
  add_verify_table(report, result.report);
  sw::write_word_file(out_file, result.word);
  emit(report, flags.csv);
  return 0;
}

int cmd_generic(const CommonFlags& flags, uint64_t bits, const std::vector<std::string>& certify,
                const std::string& out_file) {
  const sw::MeasureOracle m = sw::parse_measure_file(flags.measure_file);

  if (bits > 0) {
    const sw::Word prefix = sw::generic_bits(m, size_t(bits), flags.budget, flags.workers);
    if (out_file.empty())
      std::cout << prefix.str() << "\n";
    else
      sw::write_word_file(out_file, prefix);
    return 0;
  }

  const unsigned j = unsigned(std::stoul(certify.at(0)));
  const sw::Rat eps = sw::parse_rat(certify.at(1));
  const sw::GenericReport generic = sw::check_generic(m, j, eps, flags.budget, flags.workers);

  sw::RunReport report;
  report.command = "generic";
  report.add("measure", m.name());
  report.add("j", std::to_string(j));
  report.add("eps", sw::rat_str(eps));
  report.add("n", std::to_string(generic.prefix_len));
  report.add("m_actual", generic.m_actual.str());
  report.add("m_universal", generic.m_universal.str());
  report.add("gate", sw::rat_str(generic.gate));
  report.add("max_residual", sw::rat_str(generic.max_residual));
  report.add("status", generic.passed ? "pass" : "fail");
  sw::ResidualTable table;
  table.header = {"sigma", "oracle", "frequency", "residual"};
  for (const auto& row : generic.rows)
    table.rows.push_back({sw::sigma_label(row.sigma.str()), sw::rat_str(row.oracle_value),
                          sw::rat_str(row.frequency), sw::rat_str(row.residual)});
  report.table = std::move(table);
  report.exit_code = generic.passed ? 0 : 1;
  if (!out_file.empty()) sw::write_word_file(out_file, *generic.prefix);
  emit(report, flags.csv);
  return report.exit_code;
}

int cmd_roundtrip(const CommonFlags& flags, unsigned j, const std::string& eps_text) {
  const sw::MeasureOracle m = sw::parse_measure_file(flags.measure_file);
  const sw::Rat eps = sw::parse_rat(eps_text);
  const sw::ApproxProvider provider = sw::build_provider(m, flags.budget, flags.workers);

  sw::RunReport report;
  report.command = "roundtrip";
  report.add("measure", m.name());
  report.add("j", std::to_string(j));
  report.add("eps", sw::rat_str(eps));

  sw::Rat max_residual(0);
  sw::ResidualTable table;
  table.header = {"sigma", "oracle", "recovered", "residual"};
  for (const sw::Pattern& sigma : sw::patterns_up_to(j)) {
    const sw::Rat recovered = sw::measure_from_approx(provider, sigma, eps);
    const sw::Rat oracle = m.query(sigma, eps / 4);
    const sw::Rat residual = sw::rat_abs(oracle - recovered);
    max_residual = std::max(max_residual, residual);
    table.rows.push_back({sw::sigma_label(sigma.str()), sw::rat_str(oracle),
                          sw::rat_str(recovered), sw::rat_str(residual)});
  }
  const bool passed = max_residual < eps;
  report.add("max_residual", sw::rat_str(max_residual));
  report.add("status", passed ? "pass" : "fail");
  report.table = std::move(table);
  report.exit_code = passed ? 0 : 1;
  emit(report, flags.csv);
  return report.exit_code;
}

int cmd_amenable_approx(const CommonFlags& flags, unsigned d, unsigned j,
                        const std::string& eps_text, const std::string& out_file) {
  const sw::LatticeOracle m = sw::parse_lattice_file(flags.measure_file);
  const sw::Rat eps = sw::parse_rat(eps_text);
  const sw::ZdBuildResult built = sw::build_zd(m, d, j, eps, flags.budget, flags.workers);

  sw::RunReport report;
  report.command = "amenable-approx";
  report.add("measure", m.name());
  report.add("d", std::to_string(d));
  report.add("j", std::to_string(j));
  report.add("eps", sw::rat_str(eps));
  report.add("budget", std::to_string(flags.budget));
  if (built.report) {
    const sw::ZdReport& r = *built.report;
    report.add("k", std::to_string(r.block_side));
    report.add("L", std::to_string(r.copies));
    report.add("delta", sw::rat_str(r.delta));
    report.add("cells", std::to_string(built.model->total_cells()));
    report.add("measured_error", sw::rat_str(r.measured));
    report.add("certified_error", sw::rat_str(r.certified));
    report.add("boundary_term", sw::rat_str(r.boundary_term));
    report.add("rounding_term", sw::rat_str(r.rounding_term));
    report.add("oracle_term", sw::rat_str(r.oracle_term));
    report.add("ledger_bound", sw::rat_str(r.ledger_bound));
    report.add("dom_fraction", sw::rat_str(r.dom_fraction));
    report.add("eps_met", r.eps_met ? "yes" : "no");
    sw::ResidualTable table;
    table.header = {"sigma", "oracle", "density", "residual"};
    for (const auto& row : r.rows)
      table.rows.push_back({row.sigma.str(), sw::rat_str(row.oracle_value),
                            sw::rat_str(row.model_density), sw::rat_str(row.residual)});
    report.table = std::move(table);
    if (!out_file.empty()) sw::write_lattice_model_file(out_file, *built.model);
  }
  report.add("status", built.ok ? "ok" : "budget-exceeded");
  report.exit_code = built.ok ? 0 : 2;
  emit(report, flags.csv);
  return report.exit_code;
}

int cmd_extract(const std::string& words_file, const std::string& tol_text, unsigned max_j,
                bool csv) {
  const std::vector<sw::Word> words = sw::read_word_list_file(words_file);
  const sw::Rat tol = sw::parse_rat(tol_text);
  const sw::DensityTable table = sw::density_table(words, max_j);
  const std::vector<size_t> survivors = sw::extract_subsequence(table, tol);

  sw::RunReport report;
  report.command = "extract";
  report.add("words", std::to_string(words.size()));
  report.add("max_j", std::to_string(max_j));
  report.add("tol", sw::rat_str(tol));
  std::string indices;
  for (size_t i = 0; i < survivors.size(); ++i)
    indices += (i ? "," : "") + std::to_string(survivors[i]);
  report.add("survivors", indices);
  report.add("status", "ok");
  sw::ResidualTable rt;
  rt.header = {"sigma", "representative_density"};
  if (!survivors.empty())
    for (size_t p = 0; p < table.patterns.size(); ++p)
      rt.rows.push_back({sw::sigma_label(table.patterns[p].str()),
                         sw::rat_str(table.cells[survivors[0]][p])});
  report.table = std::move(rt);
  emit(report, csv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite certified approximations of shift-invariant measures"};
  app.require_subcommand(1);

  CommonFlags mc, ap, ge, rt, am;
  unsigned mc_depth = 3;
  std::string mc_delta = "1/1000000";
  auto* measure_check = app.add_subcommand("measure-check", "audit shift-invariance of a measure spec");
  measure_check->add_option("--measure", mc.measure_file, "measure spec file")->required();
  measure_check->add_option("--depth", mc_depth, "max pattern length")->required();
  measure_check->add_option("--delta", mc_delta, "query precision (rational)")->required();
  attach_workers_csv(measure_check, mc);

  unsigned ap_j = 1;
  std::string ap_eps, ap_out;
  uint64_t ap_pad = 0;
  auto* approx = app.add_subcommand("approx", "build a (j,eps)-good word");
  approx->add_option("--measure", ap.measure_file, "measure spec file")->required();
  approx->add_option("--j", ap_j, "max pattern length")->required();
  approx->add_option("--eps", ap_eps, "tolerance (rational)")->required();
  approx->add_option("--pad", ap_pad, "pad to this exact length (builds at eps/2)");
  approx->add_option("--budget", ap.budget, "max word length");
  approx->add_option("--out", ap_out, "output word file")->required();
  attach_workers_csv(approx, ap);

  uint64_t ge_bits = 0;
  std::vector<std::string> ge_certify;
  std::string ge_out;
  auto* generic = app.add_subcommand("generic", "generic-point stream for a measure");
  generic->add_option("--measure", ge.measure_file, "measure spec file")->required();
  auto* bits_opt = generic->add_option("--bits", ge_bits, "emit the first N bits");
  auto* cert_opt =
      generic->add_option("--certify", ge_certify, "J EPS: certify prefix frequencies")
          ->expected(2);
  bits_opt->excludes(cert_opt);
  generic->add_option("--budget", ge.budget, "max block length");
  generic->add_option("--out", ge_out, "output word file");
  attach_workers_csv(generic, ge);

  unsigned rt_j = 1;
  std::string rt_eps;
  auto* roundtrip = app.add_subcommand("roundtrip", "recover the measure from built approximations");
  roundtrip->add_option("--measure", rt.measure_file, "measure spec file")->required();
  roundtrip->add_option("--j", rt_j, "max pattern length")->required();
  roundtrip->add_option("--eps", rt_eps, "tolerance (rational)")->required();
  roundtrip->add_option("--budget", rt.budget, "max word length");
  attach_workers_csv(roundtrip, rt);

  unsigned am_d = 1, am_j = 1;
  std::string am_eps, am_out;
  auto* amenable = app.add_subcommand("amenable-approx", "build a Z^d lattice-box model");
  amenable->add_option("--measure", am.measure_file, "lattice measure spec file")->required();
  amenable->add_option("--d", am_d, "dimension")->required();
  amenable->add_option("--j", am_j, "pattern box side")->required();
  amenable->add_option("--eps", am_eps, "tolerance (rational)")->required();
  amenable->add_option("--budget", am.budget, "max total cells");
  amenable->add_option("--out", am_out, "output model file");
  attach_workers_csv(amenable, am);

  std::string ex_words, ex_tol;
  unsigned ex_maxj = 2;
  bool ex_csv = false;
  auto* extract = app.add_subcommand("extract", "thin a word family until densities agree");
  extract->add_option("--words", ex_words, "file with one word per line")->required();
  extract->add_option("--tol", ex_tol, "density gap tolerance (rational)")->required();
  extract->add_option("--max-j", ex_maxj, "max pattern length in the table");
  extract->add_flag("--csv", ex_csv, "emit the residual table alone as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  try {
    if (measure_check->parsed()) return cmd_measure_check(mc, mc_depth, mc_delta);
    if (approx->parsed()) return cmd_approx(ap, ap_j, ap_eps, ap_pad, ap_out);
    if (generic->parsed()) {
      if (ge_bits == 0 && ge_certify.empty()) {
        std::cerr << "generic: need --bits or --certify\n";
        return 3;
      }
      return cmd_generic(ge, ge_bits, ge_certify, ge_out);
    }
    if (roundtrip->parsed()) return cmd_roundtrip(rt, rt_j, rt_eps);
    if (amenable->parsed()) return cmd_amenable_approx(am, am_d, am_j, am_eps, am_out);
    if (extract->parsed()) return cmd_extract(ex_words, ex_tol, ex_maxj, ex_csv);
  } catch (const sw::Error& e) {
    std::cerr << "error (" << sw::error_kind_name(e.kind()) << "): " << e.what() << "\n";
    return error_exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 3;
}
