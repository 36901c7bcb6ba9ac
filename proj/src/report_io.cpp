#include "srt/report_io.hpp"

#include <cmath>
#include <iomanip>
#include <limits>

namespace srt {

namespace {

json num(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

json levels(const TrendLevels& l) { return json::array({num(l[0]), num(l[1]), num(l[2])}); }

template <typename T>
json num_array(const std::vector<T>& v) {
  json a = json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

void csv_num(std::ostream& os, double v) {
  if (std::isfinite(v)) {
    os << v;
  } else {
    os << (std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf"));
  }
}

}  // namespace

json to_json(const Functional& f, bool with_values) {
  json j;
  j["available"] = f.available;
  if (!f.available) {
    j["reason"] = f.reason;
    return j;
  }
  j["extremum"] = num(f.extremum);
  j["trend"] = to_string(f.trend);
  j["levels"] = levels(f.levels);
  if (with_values) j["values"] = num_array(f.values);
  return j;
}

json to_json(const CriteriaReport& c, bool with_maps) {
  json j;
  j["label"] = c.label;
  j["X"] = c.X;
  j["N"] = c.N;
  j["solvable"] = to_string(c.solvable);
  j["solvable_rule"] = c.solvable_rule;
  j["compact"] = to_string(c.compact);
  j["compact_rule"] = c.compact_rule;
  j["fired"] = c.fired;
  j["B"] = to_json(c.B);
  j["S"] = to_json(c.S);
  j["A_steklov"] = to_json(c.A, with_maps);
  j["A_tilde"] = to_json(c.A_tilde, with_maps);
  j["A_tilde_conditional"] = c.A_tilde_conditional;
  j["phi_psi_ratio"] = num(c.phi_psi_ratio);
  j["B1"] = to_json(c.B1);
  j["B2"] = to_json(c.B2);
  j["B3"] = to_json(c.B3);
  j["theta"] = to_json(c.theta);
  j["nu"] = to_json(c.nu);
  j["q_growth"] = to_json(c.q_growth);
  j["r_sup"] = to_json(c.r_sup);
  j["h_sup"] = to_json(c.h_sup);
  json m = json::array();
  for (std::size_t k = 0; k < c.molchanov.size(); ++k) {
    json e = to_json(c.molchanov[k]);
    e["a"] = c.molchanov_a[k];
    m.push_back(e);
  }
  j["molchanov"] = m;
  j["dtilde_mass"] = to_json(c.dtilde_mass);
  j["r_is_one"] = c.r_is_one;
  j["R_tails"] = {{"left", to_string(c.R_left_tail)}, {"right", to_string(c.R_right_tail)}};
  j["Q_tails"] = {{"left", to_string(c.Q_left_tail)}, {"right", to_string(c.Q_right_tail)}};
  j["q_tails_positive"] = c.q_tails_positive;
  j["hd_A_max"] = num(c.hd_steklov_max);
  j["route_B"] = {{"solvable", to_string(c.b_solvable)}, {"compact", to_string(c.b_compact)}};
  j["route_S"] = {{"solvable", to_string(c.s_solvable)}, {"compact", to_string(c.s_compact)}};
  j["B_over_S"] = c.b_over_s ? num(*c.b_over_s) : json(nullptr);
  return j;
}

json to_json(const Analysis& a) {
  json j;
  j["spec"] = a.spec.label();
  j["window"] = {{"X", a.window.X}, {"N", a.window.N}};
  const HypothesisReport& h = a.hypotheses;
  j["hypotheses"] = {{"r_positive", h.r_positive},
                     {"q_nonnegative", h.q_nonnegative},
                     {"q_tails_positive", h.q_tails_positive},
                     {"q_left_tail", num(h.q_left_tail)},
                     {"q_right_tail", num(h.q_right_tail)},
                     {"growth_trend", to_string(h.growth_trend)},
                     {"r_integrable_left", h.is_r_integrable_left},
                     {"r_integrable_right", h.is_r_integrable_right}};
  json aux;
  aux["has_h"] = a.aux.has_h;
  aux["has_d"] = a.aux.has_d;
  aux["has_mu"] = a.aux.has_mu;
  aux["has_s"] = a.aux.has_s;
  aux["has_dtilde"] = a.aux.has_dtilde;
  for (auto [k, v] : {std::pair{"h_error", &a.aux.h_error}, {"d_error", &a.aux.d_error},
                      {"mu_error", &a.aux.mu_error}, {"s_error", &a.aux.s_error},
                      {"dtilde_error", &a.aux.dtilde_error}}) {
    if (!v->empty()) aux[k] = *v;
  }
  aux["h_identity_residual"] = num(a.aux.h_identity_residual);
  j["aux"] = aux;
  if (a.fss) {
    j["fss"] = {{"x0", a.fss->x0}, {"max_wronskian_residual", num(a.fss->max_wronskian_residual)},
                {"v_steps", a.fss->v_track.steps}, {"u_steps", a.fss->u_track.steps}};
  } else {
    j["fss"] = {{"error", a.fss_error}};
  }
  j["criteria"] = to_json(a.criteria);
  return j;
}

json to_json(const std::vector<TableCell>& cells) {
  json a = json::array();
  for (const TableCell& c : cells) {
    json e;
    e["alpha"] = c.alpha;
    e["beta"] = c.beta;
    e["expected"] = {{"solvable", to_string(c.expected_solvable)}, {"compact", to_string(c.expected_compact)}};
    if (c.error.empty()) {
      e["solvable"] = to_string(c.report.solvable);
      e["compact"] = to_string(c.report.compact);
      e["solvable_rule"] = c.report.solvable_rule;
      e["compact_rule"] = c.report.compact_rule;
    } else {
      e["error"] = c.error;
    }
    e["match"] = c.matches();
    a.push_back(e);
  }
  return a;
}

json to_json(const InvariantReport& r) {
  json j;
  j["spec"] = r.label;
  j["failures"] = r.failures();
  json a = json::array();
  for (const Check& c : r.checks) {
    a.push_back({{"module", c.module}, {"name", c.name}, {"passed", c.passed}, {"asserted", c.asserted},
                 {"worst", num(c.worst)}, {"limit", num(c.limit)}, {"samples", c.samples}, {"note", c.note}});
  }
  j["checks"] = a;
  return j;
}

json to_json(const SpectralReport& s) {
  json j;
  j["n"] = s.n;
  j["half_width"] = s.half;
  j["lambda_max"] = num(s.lambda_max);
  j["top"] = num_array(s.top);
  j["converged"] = s.converged;
  j["symmetric"] = s.symmetric;
  j["lambda1_over_lambda5"] = num(s.tail_ratio);
  j["lambda_over_B"] = num(s.envelope.ratio);
  j["envelope"] = s.envelope.bound;
  j["envelope_within"] = s.envelope.within;
  j["envelope_in_hypothesis"] = s.envelope.in_hypothesis;
  return j;
}

void write_profile_csv(std::ostream& os, const Analysis& a) {
  const AuxProfile& x = a.aux;
  const CriteriaReport& c = a.criteria;
  const std::vector<double> none;
  const std::vector<double>& rho = a.fss ? a.fss->rho : none;
  struct Col {
    const char* name;
    const std::vector<double>* v;
  };
  const Col cols[] = {{"d1", &x.d1},
                      {"d2", &x.d2},
                      {"phi", &x.phi},
                      {"psi", &x.psi},
                      {"h", &x.h},
                      {"d", &x.d},
                      {"s", &x.s},
                      {"mu", &x.mu},
                      {"dtilde", &x.dtilde},
                      {"rho", &rho},
                      {"hd", &c.B.values},
                      {"rho_s", &c.S.values},
                      {"A", &c.A.values},
                      {"A_tilde", &c.A_tilde.values},
                      {"B1", &c.B1.values},
                      {"B2", &c.B2.values},
                      {"B3", &c.B3.values},
                      {"theta", &c.theta.values},
                      {"nu", &c.nu.values}};
  const auto old = os.precision(15);
  os << "x";
  for (const Col& col : cols) os << ',' << col.name;
  os << '\n';
  for (std::size_t i = 0; i < x.x.size(); ++i) {
    os << x.x[i];
    for (const Col& col : cols) {
      os << ',';
      if (col.v->size() == x.x.size()) csv_num(os, (*col.v)[i]);
    }
    os << '\n';
  }
  os.precision(old);
}

void write_report_csv(std::ostream& os, const Analysis& a) {
  const CriteriaReport& c = a.criteria;
  const auto old = os.precision(15);
  os << "key,value\n";
  os << "spec," << c.label << '\n' << "X," << c.X << '\n' << "N," << c.N << '\n';
  os << "solvable," << to_string(c.solvable) << '\n' << "solvable_rule,\"" << c.solvable_rule << "\"\n";
  os << "compact," << to_string(c.compact) << '\n' << "compact_rule,\"" << c.compact_rule << "\"\n";
  const std::pair<const char*, const Functional*> fs[] = {
      {"B", &c.B},   {"S", &c.S},   {"A_steklov", &c.A}, {"A_tilde", &c.A_tilde}, {"B1", &c.B1},
      {"B2", &c.B2}, {"B3", &c.B3}, {"theta", &c.theta}, {"nu", &c.nu},          {"dtilde_mass", &c.dtilde_mass}};
  for (const auto& [name, f] : fs) {
    if (!f->available) {
      os << name << ",unavailable\n";
      continue;
    }
    os << name << ',';
    csv_num(os, f->extremum);
    os << '\n' << name << "_trend," << to_string(f->trend) << '\n';
  }
  for (std::size_t k = 0; k < c.molchanov.size(); ++k) {
    if (!c.molchanov[k].available) continue;
    os << "m(" << c.molchanov_a[k] << "),";
    csv_num(os, c.molchanov[k].extremum);
    os << "\nm(" << c.molchanov_a[k] << ")_trend," << to_string(c.molchanov[k].trend) << '\n';
  }
  os.precision(old);
}

void write_table_csv(std::ostream& os, const std::vector<TableCell>& cells) {
  os << "alpha,beta,solvable,compact,expected_solvable,expected_compact,match,rule\n";
  for (const TableCell& c : cells) {
    os << c.alpha << ',' << c.beta << ',';
    if (c.error.empty()) {
      os << to_string(c.report.solvable) << ',' << to_string(c.report.compact);
    } else {
      os << "error,error";
    }
    os << ',' << to_string(c.expected_solvable) << ',' << to_string(c.expected_compact) << ','
       << (c.matches() ? "yes" : "no") << ",\"" << (c.error.empty() ? c.report.compact_rule : c.error) << "\"\n";
  }
}

void write_covering_csv(std::ostream& os, const Covering& c) {
  const auto old = os.precision(15);
  os << "side,index,lo,center,hi,kappa\n";
  for (std::size_t i = 0; i < c.backward.size(); ++i) {
    const Segment& s = c.backward[i];
    os << "backward," << i << ',' << s.lo << ',' << s.center << ',' << s.hi << ',' << s.kappa << '\n';
  }
  for (std::size_t i = 0; i < c.forward.size(); ++i) {
    const Segment& s = c.forward[i];
    os << "forward," << i << ',' << s.lo << ',' << s.center << ',' << s.hi << ',' << s.kappa << '\n';
  }
  os.precision(old);
}

void write_spectrum_csv(std::ostream& os, const SpectralReport& s) {
  const auto old = os.precision(15);
  os << "index,lambda\n";
  for (std::size_t i = 0; i < s.top.size(); ++i) os << i + 1 << ',' << s.top[i] << '\n';
  os.precision(old);
}

void write_invariants_csv(std::ostream& os, const InvariantReport& r) {
  os << "module,name,status,worst,limit,samples,note\n";
  for (const Check& c : r.checks) {
    os << c.module << ",\"" << c.name << "\"," << (!c.asserted ? "skipped" : (c.passed ? "pass" : "FAIL")) << ',';
    csv_num(os, c.worst);
    os << ',';
    csv_num(os, c.limit);
    os << ',' << c.samples << ",\"" << c.note << "\"\n";
  }
}

}  // namespace srt
