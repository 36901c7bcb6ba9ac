// srt: batch front-end for the Sturm-Liouville resolvent toolkit.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "srt/errors.hpp"
#include "srt/invariants.hpp"
#include "srt/pipeline.hpp"
#include "srt/report_io.hpp"
#include "srt/spectral.hpp"

namespace fs = std::filesystem;
using namespace srt;

namespace {

enum Exit { ok = 0, error = 1, undecided = 2 };

struct Common {
  std::string spec;
  double window = 30.0;
  int samples = 601;
  double p = 2.0;
  std::uint64_t seed = 20251014;
  std::string format = "json";
  std::string out;
  double radius = 0.0;
};

void add_common(CLI::App* cmd, Common& c, bool need_spec) {
  auto* s = cmd->add_option("--spec", c.spec, "coefficient spec file (key=value)");
  if (need_spec) s->required();
  cmd->add_option("--window", c.window, "half-width X of the analysis window")->capture_default_str();
  cmd->add_option("--samples", c.samples, "grid samples N")->capture_default_str();
  cmd->add_option("--p", c.p, "exponent p in (1, inf)")->capture_default_str();
  cmd->add_option("--seed", c.seed, "seed for random probe points")->capture_default_str();
  cmd->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  cmd->add_option("--out", c.out, "output directory (stdout when omitted)");
  cmd->add_option("--radius", c.radius, "root search radius (default 8X)");
}

void check_common(const Common& c) {
  if (!(c.window > 0.0)) fail(ErrorKind::invalid_argument, "--window must be positive");
  if (c.samples < 3) fail(ErrorKind::invalid_argument, "--samples must be at least 3");
  if (!(c.p > 1.0) || !std::isfinite(c.p)) fail(ErrorKind::invalid_argument, "--p must lie in (1, inf)");
}

AnalysisOptions analysis_options(const Common& c) {
  AnalysisOptions o;
  if (c.radius > 0.0) o.max_radius = c.radius;
  return o;
}

// Writes to <out>/<name> or to stdout.
void emit(const Common& c, const std::string& name, const std::string& body) {
  if (c.out.empty()) {
    std::cout << body;
    return;
  }
  fs::create_directories(c.out);
  const fs::path p = fs::path(c.out) / name;
  std::ofstream f(p);
  if (!f) fail(ErrorKind::io, "cannot write '" + p.string() + "'");
  f << body;
}

std::string ext(const Common& c) { return c.format == "csv" ? ".csv" : ".json"; }

int cmd_analyze(const Common& c) {
  check_common(c);
  const Analysis a = analyze(load_spec_file(c.spec), Window(c.window, c.samples), analysis_options(c));
  std::ostringstream rep;
  if (c.format == "csv") {
    write_report_csv(rep, a);
  } else {
    rep << to_json(a).dump(2) << '\n';
  }
  emit(c, "report" + ext(c), rep.str());
  if (!c.out.empty()) {
    std::ostringstream prof;
    write_profile_csv(prof, a);
    emit(c, "profile.csv", prof.str());
  }
  const CriteriaReport& r = a.criteria;
  std::ostream& msg = c.out.empty() ? std::cerr : std::cout;
  msg << "solvable=" << to_string(r.solvable) << " (" << r.solvable_rule << ")\n"
      << "compact=" << to_string(r.compact) << " (" << r.compact_rule << ")\n";
  const bool open = r.solvable == Verdict::inconclusive || r.compact == Verdict::inconclusive;
  return open ? undecided : ok;
}

std::vector<double> parse_list(const std::string& s, const char* flag) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      std::size_t used = 0;
      v.push_back(std::stod(tok, &used));
      if (tok.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      fail(ErrorKind::invalid_argument, std::string(flag) + ": not a number '" + tok + "'");
    }
  }
  if (v.empty()) fail(ErrorKind::invalid_argument, std::string(flag) + " list is empty");
  return v;
}

int cmd_table(const Common& c, const std::string& alphas, const std::string& betas) {
  check_common(c);
  const auto A = parse_list(alphas, "--alpha");
  const auto B = parse_list(betas, "--beta");
  const auto cells = exponential_table(A, B, Window(c.window, c.samples), analysis_options(c));
  std::ostringstream body;
  if (c.format == "csv") {
    write_table_csv(body, cells);
  } else {
    body << to_json(cells).dump(2) << '\n';
  }
  emit(c, "table" + ext(c), body.str());
  std::ostream& msg = c.out.empty() ? std::cerr : std::cout;
  int bad = 0;
  for (const auto& cell : cells) {
    const bool m = cell.matches();
    bad += !m;
    msg << "alpha=" << cell.alpha << " beta=" << cell.beta << " solvable=" << to_string(cell.report.solvable)
        << " compact=" << to_string(cell.report.compact) << (m ? "" : "  MISMATCH")
        << (cell.error.empty() ? "" : "  error: " + cell.error) << '\n';
  }
  msg << (cells.size() - bad) << "/" << cells.size() << " cells match\n";
  return bad ? undecided : ok;
}

int cmd_covering(const Common& c, double x, const std::string& kind) {
  check_common(c);
  const Window W(c.window, c.samples);
  if (std::abs(x) > W.X) fail(ErrorKind::invalid_argument, "--x must lie inside the window");
  AnalysisOptions o = analysis_options(c);
  o.want_fss = kind == "s";
  const Analysis a = analyze(load_spec_file(c.spec), W, o);
  const SolverLimits lim = limits_for(W, o);
  const WeightField& F = a.field;
  ScalarFn kappa;
  double guess = 1.0;
  std::optional<ScalarFn> rho;
  if (kind == "d") {
    if (!a.aux.has_d || !a.h) fail(ErrorKind::covering_failure, "d unavailable: " + a.aux.d_error);
    guess = a.aux.d[a.aux.d.size() / 2];
    const HFunction* H = &*a.h;
    kappa = [&F, H, lim, &guess](double t) {
      return guess = solve_d(F, [H](double s) { return (*H)(s); }, t, lim, guess);
    };
  } else {
    if (!a.aux.has_s || !a.fss) {
      fail(ErrorKind::covering_failure,
           a.fss ? "s unavailable: " + a.aux.s_error : "fundamental system unavailable: " + a.fss_error);
    }
    guess = a.aux.s[a.aux.s.size() / 2];
    rho = a.fss->rho_fn();
    kappa = [&F, &rho, lim, &guess](double t) { return guess = solve_s(F, *rho, t, lim, guess); };
  }
  const Covering cov = build_covering(kappa, x, W, kind == "d" ? CoveringKind::d : CoveringKind::s);
  std::ostringstream body;
  if (c.format == "csv") {
    write_covering_csv(body, cov);
  } else {
    json j;
    j["origin"] = cov.origin;
    j["kind"] = to_string(cov.kind);
    j["max_chain_gap"] = cov.max_chain_gap();
    j["max_center_residual"] = cov.max_center_residual();
    j["covers_window"] = cov.covers(-W.X, W.X);
    auto seg = [](const std::vector<Segment>& v) {
      json arr = json::array();
      for (const auto& s : v) arr.push_back({{"lo", s.lo}, {"center", s.center}, {"hi", s.hi}, {"kappa", s.kappa}});
      return arr;
    };
    j["forward"] = seg(cov.forward);
    j["backward"] = seg(cov.backward);
    body << j.dump(2) << '\n';
  }
  emit(c, "covering_" + kind + ext(c), body.str());
  std::ostream& msg = c.out.empty() ? std::cerr : std::cout;
  msg << "segments forward=" << cov.forward.size() << " backward=" << cov.backward.size()
      << " gap=" << cov.max_chain_gap() << '\n';
  return ok;
}

int cmd_spectrum(const Common& c, int n, int top) {
  check_common(c);
  if (n < 2) fail(ErrorKind::invalid_argument, "--n must be at least 2");
  if (top < 1 || top > n) fail(ErrorKind::invalid_argument, "--top must lie in [1, n]");
  const Analysis a = analyze(load_spec_file(c.spec), Window(c.window, c.samples), analysis_options(c));
  if (!a.fss) fail(ErrorKind::fss_construction, a.fss_error);
  const auto& B = a.criteria.B;
  const SpectralReport s = spectrum(*a.fss, n, top, B.available ? B.extremum : 0.0,
                                    B.available && B.trend == Trend::vanishing, c.window);
  std::ostringstream body;
  if (c.format == "csv") {
    write_spectrum_csv(body, s);
  } else {
    body << to_json(s).dump(2) << '\n';
  }
  emit(c, "spectrum" + ext(c), body.str());
  std::ostream& msg = c.out.empty() ? std::cerr : std::cout;
  msg << "lambda_max=" << s.lambda_max << (s.converged ? "" : " (not converged)") << '\n';
  return ok;
}

int cmd_verify(const Common& c, int pairs, int hardy_n) {
  check_common(c);
  VerifyOptions o;
  o.seed = c.seed;
  o.p = c.p;
  o.random_pairs = pairs;
  o.hardy_n = hardy_n;
  o.analysis = analysis_options(c);
  const InvariantReport r = run_invariants(load_spec_file(c.spec), Window(c.window, c.samples), o);
  std::ostringstream body;
  if (c.format == "csv") {
    write_invariants_csv(body, r);
  } else {
    body << to_json(r).dump(2) << '\n';
  }
  emit(c, "verify" + ext(c), body.str());
  std::ostream& msg = c.out.empty() ? std::cerr : std::cout;
  for (const auto& k : r.checks) {
    const char* tag = k.samples == 0 ? "SKIP" : k.passed ? "PASS" : k.asserted ? "FAIL" : "WARN";
    msg << tag << "  [" << k.module << "] " << k.name;
    if (!k.note.empty()) msg << "  (" << k.note << ")";
    msg << '\n';
  }
  const auto bad = r.failures();
  msg << (bad == 0 ? "all asserted invariants hold" : std::to_string(bad) + " invariant(s) violated") << '\n';
  return r.ok() ? ok : undecided;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Resolvent, separation and spectral diagnostics for -(r y')' + q y = f on the real line"};
  app.require_subcommand(1);
  Common c;

  auto* an = app.add_subcommand("analyze", "auxiliary functions, criteria and verdicts");
  add_common(an, c, true);

  std::string alphas = "-1,0,1", betas = "-1,0,1";
  auto* tb = app.add_subcommand("table", "verdict table for r = e^{alpha|x|}, q = e^{beta|x|}");
  add_common(tb, c, false);
  tb->add_option("--alpha", alphas, "comma-separated alpha values")->capture_default_str();
  tb->add_option("--beta", betas, "comma-separated beta values")->capture_default_str();

  double x = 0.0;
  std::string kind = "d";
  auto* cv = app.add_subcommand("covering", "segment covering built from d or s");
  add_common(cv, c, true);
  cv->add_option("--x", x, "covering origin")->capture_default_str();
  cv->add_option("--kind", kind, "d or s")->check(CLI::IsMember({"d", "s"}))->capture_default_str();

  int n = 512, top = 10;
  auto* sp = app.add_subcommand("spectrum", "largest eigenvalues of the discretized Green operator");
  add_common(sp, c, true);
  sp->add_option("--n", n, "cells per side")->capture_default_str();
  sp->add_option("--top", top, "number of eigenvalues")->capture_default_str();

  int pairs = 50, hardy_n = 512;
  auto* vf = app.add_subcommand("verify", "run the invariant suite");
  add_common(vf, c, true);
  vf->add_option("--pairs", pairs, "random pairs for Lipschitz checks")->capture_default_str();
  vf->add_option("--n", hardy_n, "cells for operator checks")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? ok : error;
  }

  try {
    if (*an) return cmd_analyze(c);
    if (*tb) return cmd_table(c, alphas, betas);
    if (*cv) return cmd_covering(c, x, kind);
    if (*sp) return cmd_spectrum(c, n, top);
    if (*vf) return cmd_verify(c, pairs, hardy_n);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return error;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return error;
  }
  return error;
}
