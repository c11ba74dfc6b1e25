#include "paircat/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace paircat::io {

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Csv::Csv(std::vector<std::string> header) : header_(std::move(header)) {}

void Csv::add(std::vector<std::string> row) {
  if (row.size() != header_.size()) throw std::logic_error("csv row width does not match header");
  rows_.push_back(std::move(row));
}

std::string Csv::str() const {
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
    os << '\n';
  };
  line(header_);
  for (const auto& r : rows_) line(r);
  return os.str();
}

void Csv::write(const std::filesystem::path& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open " + path.string() + " for writing");
  f << str();
}

Csv dephasing_csv(const std::vector<RateRow>& rows) {
  Csv c({"gamma", "delta", "kappa_n", "scaled_rate"});
  for (const auto& r : rows) c.add({num(r.gamma), std::to_string(r.delta), num(r.kappa_n), num(r.scaled_rate)});
  return c;
}

Csv lossprob_csv(const std::vector<LossProbRow>& rows) {
  Csv c({"code_kind", "param", "eta", "nbar", "prob_kind", "value"});
  for (const auto& r : rows) c.add({r.code_kind, num(r.param), num(r.eta), num(r.nbar), r.prob_kind, num(r.value)});
  return c;
}

Csv fidelity_csv(const std::vector<FidelityRow>& rows) {
  Csv c({"code", "one_minus_eta", "fidelity", "truncation_defect"});
  for (const auto& r : rows) c.add({r.code, num(r.one_minus_eta), num(r.fidelity), num(r.truncation_defect)});
  return c;
}

Csv grid_csv(const DistributionGrid& g) {
  Csv c({"re_gamma", "im_gamma", "value", "measure"});
  for (std::size_t i = 0; i < g.values.size(); ++i)
    c.add({num(g.gamma[i].real()), num(g.gamma[i].imag()), num(g.values[i]), num(g.measure[i])});
  return c;
}

Csv junction_csv(const std::vector<JunctionRow>& rows) {
  Csv c({"pi_or_delta", "beta", "c_minus"});
  for (const auto& r : rows) c.add({std::to_string(r.pi_or_delta), num(r.beta), num(r.c_minus)});
  return c;
}

json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

namespace {
json coeffs_json(const KLCoeffs& k) {
  return {{"c", cplx_json(k.c)}, {"x", cplx_json(k.x)}, {"y", cplx_json(k.y)}, {"z", cplx_json(k.z)},
          {"residual", k.residual}};
}
json vec_json(const std::vector<double>& v) { return json(v); }
}  // namespace

json to_json(const KLReport& r) {
  json e = json::array();
  bool all = true;
  for (const auto& x : r.entries) {
    all = all && x.exact;
    json j = coeffs_json(x.coeffs);
    j["left"] = x.left;
    j["right"] = x.right;
    j["exact"] = x.exact;
    e.push_back(std::move(j));
  }
  return {{"tol", r.tol}, {"all_exact", all}, {"entries", e}};
}

json to_json(const CertReport& r) {
  json e = json::array();
  for (const auto& x : r.entries) {
    json j = coeffs_json(x.coeffs);
    j["left"] = x.left;
    j["right"] = x.right;
    j["same_sector"] = x.same_sector;
    e.push_back(std::move(j));
  }
  return {{"pairs", r.entries.size()},
          {"max_cross_sector", r.max_cross_sector},
          {"max_same_sector_ratio", r.max_same_sector_ratio},
          {"max_tail", r.max_tail},
          {"entries", e}};
}

json to_json(const DecodedError& d) {
  return {{"mode", d.mode == DecodedError::Mode::loss_only ? "loss_only" : "loss_gain"},
          {"exponents", d.exps},
          {"label", d.unused ? std::string() : error_label(d.exps)},
          {"region", d.region},
          {"unused", d.unused}};
}

json to_json(const RegimeFlags& f) {
  return {{"perturbative_ratio", f.perturbative_ratio},
          {"lossy_ratio", f.lossy_ratio},
          {"perturbative", f.perturbative},
          {"lossy_junction", f.lossy_junction}};
}

json to_json(const EffectiveParams& e) {
  return {{"kappa2", e.kappa2}, {"gamma", cplx_json(e.gamma)}, {"error_rate", e.error_rate}};
}

json to_json(const ValidationReport& r) {
  return {{"effective", to_json(r.eff)},
          {"regime", to_json(r.regime)},
          {"times", vec_json(r.times)},
          {"trace_distance", vec_json(r.trace_distance)},
          {"max_trace_distance", r.max_trace_distance},
          {"full_dim", r.full_dim},
          {"effective_dim", r.effective_dim}};
}

json to_json(const RateFit& r) {
  return {{"fitted", r.fitted}, {"formula", r.formula}, {"ratio", r.ratio}, {"horizon", r.horizon}};
}

json to_json(const ReadoutResult& r) {
  return {{"amplitude", cplx_json(r.amplitude)},
          {"purity", r.purity},
          {"residual", r.residual},
          {"top_mass", r.top_mass}};
}

json to_json(const AutonomousTrace& t) {
  return {{"times", vec_json(t.times)},
          {"fidelity", vec_json(t.fidelity)},
          {"pop_delta0", vec_json(t.pop_delta0)},
          {"pop_delta_plus", vec_json(t.pop_delta_plus)},
          {"pop_delta_minus", vec_json(t.pop_delta_minus)}};
}

json grid_header(const DistributionGrid& g) {
  return {{"delta", g.delta},
          {"kind", g.kind == DistKind::Q ? "Q" : "W"},
          {"grid",
           {{"re_min", g.grid.re_min},
            {"re_max", g.grid.re_max},
            {"n_re", g.grid.n_re},
            {"im_min", g.grid.im_min},
            {"im_max", g.grid.im_max},
            {"n_im", g.grid.n_im}}},
          {"max_imag", g.max_imag},
          {"edge_magnitude", g.edge_magnitude},
          {"warnings", g.warnings}};
}

json manifest(const std::string& command, const json& config, const json& tolerances) {
  return {{"tool", "paircat-lab"},
          {"version", PAIRCAT_VERSION},
          {"command", command},
          {"config", config},
          {"tolerances", tolerances}};
}

void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open " + path.string() + " for writing");
  f << j.dump(2) << '\n';
}

}  // namespace paircat::io
