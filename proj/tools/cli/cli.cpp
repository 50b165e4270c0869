#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "conifold/errors.hpp"
#include "conifold/report.hpp"

namespace conifold::cli {

namespace {

struct Selector {
  std::optional<int> n, r, m, k;

  void add_to(CLI::App& cmd) {
    auto* on = cmd.add_option("--n", n, "ambient dimension");
    auto* orr = cmd.add_option("--r", r, "dimension of the blown-up subspace");
    auto* om = cmd.add_option("--m", m, "m = n - r - 1");
    auto* ok = cmd.add_option("--k", k, "k = r + 1");
    on->excludes(om)->excludes(ok);
    orr->excludes(om)->excludes(ok);
  }

  FamilyParams resolve() const {
    const bool nr = n || r;
    const bool mk = m || k;
    if (nr && (!n || !r)) throw CLI::ValidationError("--n and --r must be given together");
    if (mk && (!m || !k)) throw CLI::ValidationError("--m and --k must be given together");
    if (!nr && !mk) throw CLI::ValidationError("select a family with --n/--r or --m/--k");
    return nr ? derive_params(*n, *r) : params_from_mk(*m, *k);
  }
};

IntRange parse_range(const std::string& text) {
  int lo = 0;
  int hi = 0;
  const auto dots = text.find("..");
  try {
    std::size_t used = 0;
    if (dots == std::string::npos) {
      lo = hi = std::stoi(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
    } else {
      const std::string a = text.substr(0, dots);
      const std::string b = text.substr(dots + 2);
      lo = std::stoi(a, &used);
      if (used != a.size()) throw std::invalid_argument(text);
      hi = std::stoi(b, &used);
      if (used != b.size()) throw std::invalid_argument(text);
    }
  } catch (const std::logic_error&) {
    throw CLI::ValidationError(fmt::format("bad range '{}', expected LO..HI or N", text));
  }
  return {lo, hi};
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::Config, fmt::format("cannot open '{}' for writing", path.string()));
  f << text;
  if (!f) throw Error(ErrorKind::Config, fmt::format("failed writing '{}'", path.string()));
}

/// Explicit --output wins; otherwise CONIFOLD_OUTPUT_DIR/<stem>; otherwise
/// nothing is written.
std::optional<std::filesystem::path> output_path(const std::string& explicit_path,
                                                 const std::string& stem) {
  if (!explicit_path.empty()) return std::filesystem::path(explicit_path);
  if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir) {
    return std::filesystem::path(dir) / stem;
  }
  return std::nullopt;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Domain:
    case ErrorKind::Precondition:
    case ErrorKind::Config:
      return kUsage;
    case ErrorKind::TheoremViolation:
    case ErrorKind::VerificationFailure:
    case ErrorKind::LemmaViolation:
    case ErrorKind::OracleMismatch:
      return kVerificationFailure;
    case ErrorKind::OracleInconclusive:
      return kOracleInconclusive;
    case ErrorKind::InternalConsistency:
    case ErrorKind::Numerical:
    case ErrorKind::Parse:
    case ErrorKind::SchemaVersion:
      return kNumerical;
  }
  return kNumerical;
}

const char* mark(bool ok) { return ok ? "PASS" : "FAIL"; }

std::string family_line(const FamilyParams& p) {
  return fmt::format("family n={} r={}  (m={} k={})  rho={}  deg u={}", p.n(), p.r(), p.m(), p.k(),
                     p.rho(), p.reduced_degree());
}

void print_case(std::ostream& out, const CaseReport& c) {
  if (c.case_id == CaseId::IV) {
    fmt::print(out, "case IV: v(r0) = {:.10g} > 0  {}\n", c.lhs_value, mark(c.pass));
    if (c.auxiliary) fmt::print(out, "  r- = {:.16g}\n", c.auxiliary->r_minus);
  } else {
    fmt::print(out, "case {}: lhs = {:.10g} > {}  {}\n", to_string(c.case_id), c.lhs_value,
               c.threshold, mark(c.pass));
  }
  if (c.minorant) fmt::print(out, "  minorant = {:.10g}\n", *c.minorant);
}

void print_roots_table(std::ostream& out, const VerificationReport& rep) {
  fmt::print(out, "{:>4} {:>24} {:>24} {:>20} {:>10} {:>10}  {}\n", "#", "re", "im", "|alpha|",
             "residual", "radius", "circle");
  int i = 0;
  for (const auto& row : rep.roots) {
    fmt::print(out, "{:>4} {:>24.17g} {:>24.17g} {:>20.17g} {:>10.2e} {:>10.2e}  {}\n", i++, row.re,
               row.im, row.modulus, row.residual, row.error_radius,
               row.d ? fmt::format("d={}", *row.d) : std::string("-"));
  }
}

void print_verify_summary(std::ostream& out, const VerificationReport& rep, bool verbose) {
  const auto& p = rep.params;
  const auto& c = rep.conditions;
  fmt::print(out, "{}\n", family_line(p));
  fmt::print(out, "r+ = {:.17g}  in [{:.17g}, {:.17g}]\n", rep.r_plus, rep.r_plus_lo, rep.r_plus_hi);
  fmt::print(out, "T_con = {:.17g}\n", rep.t_con);
  fmt::print(out, "roots: {} via {}, {} iterations, square-free {}\n", rep.roots.size(),
             rep.root_method, rep.root_iterations, mark(rep.gcd_degree == 0));
  fmt::print(out, "condition 1 (|g| <= T_con, margin {:.3e}): {}\n", c.cond1_margin, mark(c.cond1_pass));
  fmt::print(out, "condition 2 (T_con simple): {}\n", mark(c.cond2_pass));
  fmt::print(out, "condition 3 (T_con > 0): {}\n", mark(c.cond3_pass));
  fmt::print(out, "conditions {}/3\n", c.passed_count());
  fmt::print(out, "circle count {} (predicted rho = {}): {}\n", c.circle_count,
             c.predicted_circle_count, mark(c.circle_law_pass()));
  for (const auto& row : rep.roots) {
    if (row.d && *row.d != 0) {
      fmt::print(out, "  equality root d={}: alpha = {:.17g}{:+.17g}i, g(alpha) = {:.17g}{:+.17g}i\n",
                 *row.d, row.re, row.im, row.g_re, row.g_im);
    }
  }
  fmt::print(out, "lemma: r+ <= |alpha| < r0 = {:.10g}  (lower margin {:.3e}, upper margin {:.3e})\n",
             rep.r0, rep.lemma.lower, rep.lemma.upper);
  print_case(out, rep.case_report);
  if (rep.oracle) {
    const auto& o = *rep.oracle;
    fmt::print(out, "oracle: {}/{} clusters, matched {}, max distance {:.3e}, hessian {}: {}\n",
               o.cluster_count, o.expected_count, o.matched, o.max_pair_distance,
               o.hessian_nondegenerate ? "nondegenerate" : "degenerate", mark(o.pass()));
  }
  for (const auto& d : c.diagnostics) fmt::print(out, "  note: {}\n", d);
  if (verbose) print_roots_table(out, rep);
  for (const auto& [stage, ms] : rep.timings_ms) fmt::print(out, "time {}: {:.3f} ms\n", stage, ms);
  fmt::print(out, "result: {}\n", mark(rep.pass()));
}

struct Common {
  RunConfig cfg;
  std::string precision = "double";
  std::string output;
  std::string format = "structured";
  bool verbose = false;

  void add_root_options(CLI::App& cmd) {
    cmd.add_option("--precision", precision, "double or extended")
        ->check(CLI::IsMember({"double", "extended"}));
    cmd.add_option("--mantissa-bits", cfg.roots.mantissa_bits, "bits for --precision extended")
        ->check(CLI::Range(64, 4096));
    cmd.add_option("--residual-tol", cfg.roots.residual_tol, "root residual tolerance");
    cmd.add_option("--max-degree", cfg.max_degree, "refuse families with (m+1)(k+1) above this");
  }

  void add_tolerance_options(CLI::App& cmd) {
    auto& t = cfg.tolerances;
    cmd.add_option("--circle-tol", t.circle_tol, "relative circle classification tolerance");
    cmd.add_option("--match-tol", t.match_tol, "critical value match tolerance");
    cmd.add_option("--slack-tol", t.slack_tol, "condition 1 slack");
    cmd.add_option("--abs-tol", t.abs_tol, "envelope chain slack");
    cmd.add_option("--recon-tol", t.recon_tol, "roots-of-unity reconstruction tolerance");
    cmd.add_option("--lower-bound-tol", t.lower_bound_tol, "lemma lower bound tolerance");
  }

  void add_oracle_options(CLI::App& cmd, bool with_flag) {
    if (with_flag) cmd.add_flag("--oracle", cfg.run_oracle, "cross-check against the n-variable system");
    cmd.add_option("--starts", cfg.oracle.num_starts, "oracle multistart count");
    cmd.add_option("--seed", cfg.oracle.seed, "oracle RNG seed");
    cmd.add_option("--max-newton-iters", cfg.oracle.max_newton_iters, "Newton steps per start");
  }

  void add_output_options(CLI::App& cmd) {
    cmd.add_option("-o,--output", output, "write the report to this path");
    cmd.add_option("--format", format, "structured (JSON) or tabular (CSV)")
        ->check(CLI::IsMember({"structured", "tabular"}));
    cmd.add_flag("-v,--verbose", verbose, "print the root table");
    cmd.add_flag("--timings", cfg.record_timings, "record per-stage wall time");
  }

  void finalize() {
    cfg.roots.precision = precision == "extended" ? Precision::Extended : Precision::Double;
  }
};

std::string stem_for(const FamilyParams& p, const std::string& what, const std::string& format) {
  return fmt::format("{}_m{}_k{}.{}", what, p.m(), p.k(), format == "tabular" ? "csv" : "json");
}

int cmd_verify(const Selector& sel, Common& c, std::ostream& out) {
  c.finalize();
  const FamilyParams p = sel.resolve();
  check_degree_guard(p, c.cfg);
  const VerificationReport rep = run_family(p, c.cfg);
  print_verify_summary(out, rep, c.verbose);
  if (auto path = output_path(c.output, stem_for(p, "verify", c.format))) {
    write_file(*path, c.format == "tabular" ? roots_csv(rep) : serialize(rep));
    fmt::print(out, "wrote {}\n", path->string());
  }
  if (rep.pass()) return kOk;
  // only the oracle shortfall is left: statistical, not a hard failure
  const bool rest_ok = rep.conditions.all_pass() && rep.case_report.pass && rep.gcd_degree == 0;
  if (rest_ok && rep.oracle && rep.oracle->inconclusive) return kOracleInconclusive;
  return kVerificationFailure;
}

int cmd_roots(const Selector& sel, Common& c, std::ostream& out) {
  c.finalize();
  const FamilyParams p = sel.resolve();
  check_degree_guard(p, c.cfg);
  const VerificationReport rep = run_family(p, c.cfg);
  if (c.format == "tabular") {
    out << roots_csv(rep);
  } else {
    fmt::print(out, "{}\n", family_line(p));
    print_roots_table(out, rep);
  }
  if (auto path = output_path(c.output, stem_for(p, "roots", c.format))) {
    write_file(*path, c.format == "tabular" ? roots_csv(rep) : serialize(rep));
    fmt::print(out, "wrote {}\n", path->string());
  }
  return kOk;
}

int cmd_oracle(const Selector& sel, Common& c, std::ostream& out) {
  c.finalize();
  c.cfg.run_oracle = true;
  const FamilyParams p = sel.resolve();
  if (p.n() > 6) {
    throw Error(ErrorKind::Config, fmt::format("oracle is limited to n <= 6 (got n = {})", p.n()));
  }
  const VerificationReport rep = run_family(p, c.cfg);
  const auto& o = *rep.oracle;
  fmt::print(out, "{}\n", family_line(p));
  fmt::print(out, "starts {} (seed {}), converged {}\n", o.num_starts, o.seed, o.converged_starts);
  fmt::print(out, "clusters {}/{}\n", o.cluster_count, o.expected_count);
  fmt::print(out, "matched {} (unmatched oracle {}, reduced {}), max distance {:.3e} <= {:.3e}\n",
             o.matched, o.unmatched_oracle, o.unmatched_reduced, o.max_pair_distance,
             o.match_tolerance);
  fmt::print(out, "reduction shape gap {:.3e}\n", o.max_reduction_gap);
  fmt::print(out, "at x_con: |grad| = {:.3e}, |det H| = {:.6g}\n", o.gradient_norm_at_conifold,
             o.hessian_det_at_conifold);
  fmt::print(out, "result: {}\n", o.inconclusive ? "INCONCLUSIVE" : mark(o.pass()));
  if (auto path = output_path(c.output, stem_for(p, "oracle", "structured"))) {
    write_file(*path, serialize(rep));
    fmt::print(out, "wrote {}\n", path->string());
  }
  if (o.inconclusive) return kOracleInconclusive;
  return o.pass() ? kOk : kVerificationFailure;
}

int cmd_cases(const Selector& sel, std::ostream& out) {
  const FamilyParams p = sel.resolve();
  fmt::print(out, "{}\n", family_line(p));
  const CaseReport c = verify_case_inequalities(p);
  print_case(out, c);
  return c.pass ? kOk : kVerificationFailure;
}

void print_matrix(std::ostream& out, IntRange mr, IntRange kr, auto&& passed) {
  fmt::print(out, "{:>6}", "m\\k");
  for (int k = kr.lo; k <= kr.hi; ++k) fmt::print(out, "{:>4}", k);
  fmt::print(out, "\n");
  for (int m = mr.lo; m <= mr.hi; ++m) {
    fmt::print(out, "{:>6}", m);
    for (int k = kr.lo; k <= kr.hi; ++k) fmt::print(out, "{:>4}", passed(m, k) ? "+" : "X");
    fmt::print(out, "\n");
  }
}

int cmd_sweep(const std::string& m_text, const std::string& k_text, bool cases_only, Common& c,
              std::ostream& out) {
  c.finalize();
  const IntRange mr = parse_range(m_text);
  const IntRange kr = parse_range(k_text);
  if (mr.lo < 1 || kr.lo < 1 || mr.lo > mr.hi || kr.lo > kr.hi) {
    throw Error(ErrorKind::Config, fmt::format("empty or invalid sweep range m={} k={}", m_text, k_text));
  }
  const int total = (mr.hi - mr.lo + 1) * (kr.hi - kr.lo + 1);

  if (cases_only) {
    int ok = 0;
    std::vector<std::vector<char>> grid(mr.hi - mr.lo + 1, std::vector<char>(kr.hi - kr.lo + 1));
    for (int m = mr.lo; m <= mr.hi; ++m) {
      for (int k = kr.lo; k <= kr.hi; ++k) {
        const CaseReport rep = verify_case_inequalities(params_from_mk(m, k));
        fmt::print(out, "m={} k={} case {} lhs={:.10g}{} {}\n", m, k, to_string(rep.case_id),
                   rep.lhs_value,
                   rep.minorant ? fmt::format(" minorant={:.10g}", *rep.minorant) : std::string(),
                   mark(rep.pass));
        grid[m - mr.lo][k - kr.lo] = rep.pass;
        ok += rep.pass;
      }
    }
    print_matrix(out, mr, kr, [&](int m, int k) { return grid[m - mr.lo][k - kr.lo] != 0; });
    fmt::print(out, "{}/{} pass\n", ok, total);
    return ok == total ? kOk : kVerificationFailure;
  }

  const SweepReport rep = run_sweep(mr, kr, c.cfg);
  print_matrix(out, mr, kr, [&](int m, int k) {
    return rep.entries[(m - mr.lo) * (kr.hi - kr.lo + 1) + (k - kr.lo)].pass;
  });
  for (const auto& f : rep.failures) {
    fmt::print(out, "  m={} k={} [{}] {}: {}\n", f.m, f.k, f.stage, f.kind, f.message);
  }
  fmt::print(out, "{}/{} pass\n", rep.passed, total);
  if (auto path = output_path(c.output, fmt::format("sweep_m{}-{}_k{}-{}.json", mr.lo, mr.hi, kr.lo, kr.hi))) {
    write_file(*path, serialize(rep));
    fmt::print(out, "wrote {}\n", path->string());
  }
  return rep.failed == 0 ? kOk : kVerificationFailure;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Conifold point verifier for blowups of projective space along a linear subspace",
               "conifold"};
  app.set_version_flag("--version", std::string(tool_version()));
  app.require_subcommand(1);

  Selector sel;
  Common common;
  std::string m_range = "1..10";
  std::string k_range = "1..10";
  bool cases_only = false;

  auto* verify = app.add_subcommand("verify", "verify one family end to end");
  sel.add_to(*verify);
  common.add_root_options(*verify);
  common.add_tolerance_options(*verify);
  common.add_oracle_options(*verify, true);
  common.add_output_options(*verify);

  auto* roots = app.add_subcommand("roots", "print all roots of the reduced polynomial");
  sel.add_to(*roots);
  common.add_root_options(*roots);
  roots->add_option("-o,--output", common.output, "write the root table to this path");
  roots->add_option("--format", common.format, "structured (JSON) or tabular (CSV)")
      ->check(CLI::IsMember({"structured", "tabular"}));

  auto* oracle = app.add_subcommand("oracle", "cross-check against the n-variable critical points");
  sel.add_to(*oracle);
  common.add_oracle_options(*oracle, false);
  oracle->add_option("-o,--output", common.output, "write the report to this path");

  auto* cases = app.add_subcommand("cases", "evaluate the case inequality for one family");
  sel.add_to(*cases);

  auto* sweep = app.add_subcommand("sweep", "verify every (m, k) in a rectangle");
  sweep->add_option("--m", m_range, "m range, LO..HI");
  sweep->add_option("--k", k_range, "k range, LO..HI");
  sweep->add_flag("--cases-only", cases_only, "only evaluate the case inequalities");
  common.add_root_options(*sweep);
  common.add_tolerance_options(*sweep);
  common.add_oracle_options(*sweep, true);
  sweep->add_option("-o,--output", common.output, "write the sweep report to this path");
  sweep->add_option("--workers", common.cfg.workers, "worker threads, 0 = all cores");

  try {
    app.parse(argc, argv);
    if (*verify) return cmd_verify(sel, common, out);
    if (*roots) return cmd_roots(sel, common, out);
    if (*oracle) return cmd_oracle(sel, common, out);
    if (*cases) return cmd_cases(sel, out);
    if (*sweep) return cmd_sweep(m_range, k_range, cases_only, common, out);
    return kUsage;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  } catch (const Error& e) {
    fmt::print(err, "error: {}\n", e.what());
    return exit_code_for(e.kind());
  } catch (const std::filesystem::filesystem_error& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kUsage;
  } catch (const std::exception& e) {
    fmt::print(err, "internal error: {}\n", e.what());
    return kNumerical;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("conifold");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace conifold::cli
