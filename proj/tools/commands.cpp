#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

#include "paircat/io.hpp"

namespace paircat::cli {

namespace fs = std::filesystem;

namespace {

bool integral(const json& v) {
  if (v.is_number_integer()) return true;
  if (!v.is_number_float()) return false;
  const double d = v.get<double>();
  return std::isfinite(d) && d == std::floor(d) && std::abs(d) < 1e15;
}

// Returns v coerced to the type of def, or throws.
json coerce(const json& def, const json& v, const std::string& where) {
  auto bad = [&]() { return ConfigError("config value at " + where + " has the wrong type"); };
  if (def.is_null()) return v;
  if (def.is_number_integer()) {
    if (!integral(v)) throw bad();
    return static_cast<long long>(v.get<double>());
  }
  if (def.is_number()) {
    if (!v.is_number()) throw bad();
    return v.get<double>();
  }
  if (def.is_boolean()) {
    if (!v.is_boolean()) throw bad();
    return v;
  }
  if (def.is_string()) {
    if (!v.is_string()) throw bad();
    return v;
  }
  if (def.is_array()) {
    if (!v.is_array()) throw bad();
    if (def.empty()) return v;
    json out = json::array();
    for (const auto& x : v) out.push_back(coerce(def.front(), x, where + "[]"));
    return out;
  }
  throw bad();
}

json parse_token(const std::string& t) {
  try {
    return json::parse(t);
  } catch (const json::parse_error&) {
    return t;
  }
}

std::vector<double> decimal_range(int lo, int hi, double den) {
  std::vector<double> v;
  for (int i = lo; i <= hi; ++i) v.push_back(i / den);
  return v;
}

// Code-averaged occupations approach 1 only as the amplitude vanishes.
std::vector<double> nbar_grid() {
  std::vector<double> v{1.1};
  for (double x : decimal_range(3, 20, 2.0)) v.push_back(x);
  return v;
}

json grid_defaults(double half_width, int n) {
  return {{"re_min", -half_width}, {"re_max", half_width}, {"n_re", n},
          {"im_min", -half_width}, {"im_max", half_width}, {"n_im", n}};
}

GridSpec grid_from(const json& j) {
  GridSpec g;
  g.re_min = j.at("re_min").get<double>();
  g.re_max = j.at("re_max").get<double>();
  g.n_re = j.at("n_re").get<int>();
  g.im_min = j.at("im_min").get<double>();
  g.im_max = j.at("im_max").get<double>();
  g.n_im = j.at("n_im").get<int>();
  if (g.n_re < 1 || g.n_im < 1) throw ConfigError("grid needs at least one point per axis");
  return g;
}

template <class T>
std::vector<T> nonempty(const json& cfg, const char* key) {
  auto v = cfg.at(key).get<std::vector<T>>();
  if (v.empty()) throw ConfigError(std::string(key) + " must not be empty");
  return v;
}

int positive_int(const json& cfg, const char* key) {
  const int v = cfg.at(key).get<int>();
  if (v < 1) throw ConfigError(std::string(key) + " must be positive");
  return v;
}

json with_globals(json j) {
  j["out_dir"] = "out";
  j["threads"] = 0;
  return j;
}

// ---- fig-dephasing ----

json run_dephasing(const json& cfg, const fs::path& out) {
  const auto gammas = nonempty<double>(cfg, "gammas");
  const auto deltas = nonempty<int>(cfg, "deltas");
  const auto kns = nonempty<double>(cfg, "kappa_ns");
  for (double g : gammas)
    if (!(g > 0)) throw ConfigError("gammas must be positive");
  for (int d : deltas)
    if (d < 0) throw ConfigError("deltas must be non-negative");
  for (double k : kns)
    if (!(k > 0)) throw ConfigError("kappa_ns must be positive");
  const int cutoff = positive_int(cfg, "cutoff");
  const double k2 = cfg.at("kappa2").get<double>();
  if (!(k2 > 0)) throw ConfigError("kappa2 must be positive");
  const auto rows = dephasing_sweep(gammas, deltas, kns, k2, cutoff);
  io::dephasing_csv(rows).write(out / "dephasing.csv");
  return {{"outputs", {"dephasing.csv"}}, {"cutoffs", {{"chain", cutoff}}}, {"rows", rows.size()}};
}

// ---- fig-lossprob ----

json run_lossprob(const json& cfg, const fs::path& out) {
  const auto nbars = nonempty<double>(cfg, "nbars");
  const auto les = nonempty<double>(cfg, "one_minus_eta");
  for (double n : nbars)
    if (!(n > 0)) throw ConfigError("nbars must be positive");
  for (double l : les)
    if (!(l >= 0 && l <= 1)) throw ConfigError("one_minus_eta must lie in [0, 1]");
  const auto rows = lossprob_sweep(nbars, les);
  io::lossprob_csv(rows).write(out / "lossprob.csv");
  return {{"outputs", {"lossprob.csv"}}, {"rows", rows.size()}};
}

// ---- fig-qfunc ----

json run_qfunc(const json& cfg, const fs::path& out) {
  const int cutoff = positive_int(cfg, "cutoff");
  const double gamma = cfg.at("gamma").get<double>();
  const double xi = cfg.at("squeezing").get<double>();
  const double tail = cfg.at("max_tail").get<double>();
  const double radius = cfg.at("normalization_radius").get<double>();
  const GridSpec grid = grid_from(cfg.at("grid"));
  const FockSpace s = FockSpace::uniform(2, cutoff);

  struct Named {
    std::string name;
    Ket ket;
  };
  std::vector<Named> states;
  states.push_back({"fock00", Ket{s, fock_ket(s, std::vector<int>{0, 0}), 0.0}});
  states.push_back({"fock11", Ket{s, fock_ket(s, std::vector<int>{1, 1}), 0.0}});
  states.push_back({"pair_coherent", pair_coherent(s, gamma, 0, tail)});
  states.push_back({"pair_cat", pair_cat_state(s, gamma, 0, 0, tail)});
  states.push_back({"two_mode_squeezed", two_mode_squeezed(s, xi, 0, tail)});

  json outputs = json::array(), grids = json::object();
  for (const auto& st : states) {
    const FixedDeltaState f = fixed_delta_state(st.ket, 0);
    const DistributionGrid g = q_function(f, grid);
    const std::string base = "qfunc_" + st.name;
    io::grid_csv(g).write(out / (base + ".csv"));
    json h = io::grid_header(g);
    h["state"] = st.name;
    h["tail_mass"] = st.ket.tail_mass;
    h["normalization"] = q_normalization(f, radius);
    io::write_json(out / (base + ".json"), h);
    outputs.push_back(base + ".csv");
    outputs.push_back(base + ".json");
    grids[st.name] = {{"normalization", h["normalization"]}, {"tail_mass", st.ket.tail_mass}};
  }
  return {{"outputs", outputs},
          {"cutoffs", {{"per_mode", cutoff}}},
          {"tolerances", {{"max_tail", tail}}},
          {"grids", grids}};
}

// ---- fig-wigner ----

json run_wigner(const json& cfg, const fs::path& out) {
  const int cutoff = positive_int(cfg, "cutoff");
  const double gamma = cfg.at("gamma").get<double>();
  const int delta = cfg.at("delta").get<int>();
  const double tail = cfg.at("max_tail").get<double>();
  const GridSpec grid = grid_from(cfg.at("grid"));
  WOptions opt;
  opt.radius = cfg.at("radius").get<double>();
  opt.nr = cfg.at("nr").get<int>();
  opt.edge_tol = cfg.at("edge_tol").get<double>();
  if (!(opt.radius > 0) || opt.nr < 3 || opt.nr % 2 == 0) throw ConfigError("radius must be positive and nr odd >= 3");
  const FockSpace s = FockSpace::uniform(2, cutoff);

  json outputs = json::array(), grids = json::object();
  for (int mu = 0; mu < 2; ++mu) {
    const Ket k = pair_cat_state(s, gamma, delta, mu, tail);
    const DistributionGrid g = w_function(fixed_delta_state(k, delta), grid, opt);
    const std::string base = "wigner_mu" + std::to_string(mu);
    io::grid_csv(g).write(out / (base + ".csv"));
    json h = io::grid_header(g);
    h["mu"] = mu;
    h["tail_mass"] = k.tail_mass;
    h["min_value"] = *std::min_element(g.values.begin(), g.values.end());
    io::write_json(out / (base + ".json"), h);
    for (const auto& w : g.warnings) std::cerr << "warning: " << base << ": " << w << '\n';
    outputs.push_back(base + ".csv");
    outputs.push_back(base + ".json");
    grids[base] = {{"min_value", h["min_value"]}, {"max_imag", g.max_imag}, {"edge_magnitude", g.edge_magnitude}};
  }
  return {{"outputs", outputs},
          {"cutoffs", {{"per_mode", cutoff}}},
          {"tolerances", {{"max_tail", tail}, {"edge_tol", opt.edge_tol}}},
          {"grids", grids}};
}

// ---- fig-fidelity ----

json run_fidelity(const json& cfg, const fs::path& out) {
  Figure5Config f;
  f.codes = nonempty<std::string>(cfg, "codes");
  f.one_minus_eta = nonempty<double>(cfg, "one_minus_eta");
  for (double l : f.one_minus_eta)
    if (!(l >= 0 && l < 1)) throw ConfigError("one_minus_eta must lie in [0, 1)");
  f.nbar_per_mode = cfg.at("nbar_per_mode").get<double>();
  f.cutoff = positive_int(cfg, "cutoff");
  f.kraus_tol = cfg.at("kraus_tol").get<double>();
  f.max_tail = cfg.at("max_tail").get<double>();
  const auto rows = figure5_sweep(f);
  io::fidelity_csv(rows).write(out / "fidelity.csv");
  json kraus = json::object();
  for (const auto& r : rows) kraus[r.code] = {{"kept", r.kraus_kept}, {"total", r.kraus_total}};
  return {{"outputs", {"fidelity.csv"}},
          {"cutoffs", {{"per_mode", f.cutoff}}},
          {"tolerances", {{"kraus_tol", f.kraus_tol}, {"max_tail", f.max_tail}}},
          {"kraus_counts", kraus}};
}

// ---- kl-report ----

json run_kl(const json& cfg, const fs::path& out) {
  const int cutoff = positive_int(cfg, "cutoff");
  const double tail = cfg.at("max_tail").get<double>();
  const double tol = cfg.at("tol").get<double>();
  const CodeSpace code = paircat_code(cutoff, cfg.at("gamma").get<double>(), cfg.at("delta").get<int>(), tail);
  auto errs = loss_monomials(code.space, positive_int(cfg, "kmax"));
  if (cfg.at("include_ab").get<bool>())
    errs.push_back({"ab", SpMat(annihilation_op(code.space, 0) * annihilation_op(code.space, 1))});
  const KLReport rep = kl_report(code, errs, tol);
  json j = io::to_json(rep);
  j["gamma"] = cfg.at("gamma");
  j["delta"] = cfg.at("delta");
  j["tail_mass"] = code.tail_mass;
  io::write_json(out / "kl_report.json", j);
  return {{"outputs", {"kl_report.json"}},
          {"cutoffs", {{"per_mode", cutoff}}},
          {"tolerances", {{"kl_tol", tol}, {"max_tail", tail}}},
          {"pairs", rep.entries.size()},
          {"all_exact", j["all_exact"]}};
}

// ---- lattice ----

std::string decoded_label(const DecodedError& d) { return d.unused ? "unused" : error_label(d.exps); }

json run_lattice(const json& cfg, const fs::path& out) {
  const auto syn = cfg.at("syndrome").get<std::vector<int>>();
  const int window = cfg.at("window").get<int>();
  if (window < 0) throw ConfigError("window must be non-negative");
  json j = json::object();
  if (!syn.empty()) {
    if (syn.size() != 2) throw ConfigError("syndrome takes two integers for the three-mode lattice");
    const DecodedError lo = decode_loss(syn), lg = decode_single_mode_loss_gain(syn);
    j["syndrome"] = syn;
    j["decoded"] = {{"loss_only", io::to_json(lo)}, {"loss_gain", io::to_json(lg)}};
    std::cout << "syndrome (" << syn[0] << ", " << syn[1] << ") -> " << decoded_label(lo)
              << " (loss/gain: " << decoded_label(lg) << ")\n";
  }

  io::Csv table({"n", "m", "region", "loss_label", "loss_gain_label"});
  for (int n = -window; n <= window; ++n)
    for (int m = -window; m <= window; ++m) {
      const Syndrome s{n, m};
      const DecodedError lo = decode_loss(s), lg = decode_single_mode_loss_gain(s);
      table.add({std::to_string(n), std::to_string(m), std::to_string(lo.region), decoded_label(lo), decoded_label(lg)});
    }
  table.write(out / "lattice.csv");

  json extra = {{"outputs", {"lattice.csv", "lattice.json"}}};
  if (cfg.at("certify").get<bool>()) {
    const int cutoff = positive_int(cfg, "cutoff");
    const double tail = cfg.at("max_tail").get<double>();
    const double g = gamma_for_multimode_nbar(cfg.at("nbar_per_mode").get<double>(), 3);
    const CodeSpace code = multimode_code(3, cutoff, g, {0, 0}, 0, tail);
    const auto errs = loss_errors(3, positive_int(cfg, "weight"), positive_int(cfg, "max_total"));
    json c = io::to_json(certify_correctability(code, errs));
    c["gamma"] = g;
    j["certification"] = c;
    extra["cutoffs"] = {{"per_mode", cutoff}};
    extra["tolerances"] = {{"max_tail", tail}};
    extra["max_cross_sector"] = c["max_cross_sector"];
  }
  io::write_json(out / "lattice.json", j);
  return extra;
}

// ---- reservoir ----

ReservoirParams reservoir_params(const json& j) {
  ReservoirParams p;
  p.g1 = j.at("g1").get<double>();
  p.g2 = j.at("g2").get<double>();
  p.delta = j.at("delta").get<double>();
  p.gamma_fg = j.at("gamma_fg").get<double>();
  p.gamma_eg = j.at("gamma_eg").get<double>();
  return p;
}

std::pair<cplx, cplx> logical_input(const std::string& name) {
  if (name == "zero") return {1.0, 0.0};
  if (name == "one") return {0.0, 1.0};
  if (name == "plus") return {1.0, 1.0};
  throw ConfigError("logical input must be zero, one or plus");
}

json run_reservoir(const json& cfg, const fs::path& out) {
  const auto parts = nonempty<std::string>(cfg, "parts");
  for (const auto& p : parts)
    if (p != "rates" && p != "validation" && p != "readout" && p != "demo")
      throw ConfigError("unknown reservoir part " + p);
  auto has = [&](const char* p) { return std::find(parts.begin(), parts.end(), p) != parts.end(); };
  json j = json::object(), extra = {{"outputs", {"reservoir.json"}}};
  json cut = json::object(), tol = json::object();

  if (has("rates")) {
    const json& r = cfg.at("rate_fit");
    const ReservoirParams p = reservoir_params(r);
    const int samples = positive_int(r, "samples");
    const RateFit four = fit_four_photon_rate(p, samples);
    const RateFit para = fit_parasitic_rate(p, samples);
    j["rates"] = {{"four_photon", io::to_json(four)},
                  {"parasitic", io::to_json(para)},
                  {"effective", io::to_json(effective_params(p))},
                  {"regime", io::to_json(regime_flags(p))}};
    extra["rate_ratios"] = {{"four_photon", four.ratio}, {"parasitic", para.ratio}};
  }
  if (has("validation")) {
    const json& v = cfg.at("validation");
    ReservoirParams p = reservoir_params(v);
    const double g = v.at("state_gamma").get<double>();
    p.eps_gf = -std::pow(g, 4) * p.g1 * p.g2 / p.delta;
    const int cutoff = positive_int(v, "cutoff");
    const FockSpace cs = FockSpace::uniform(2, cutoff);
    // Truncated on purpose: the junction model needs a tiny cavity cutoff.
    const Vec plus = (pair_cat_superposition(cs, g, 0, 0, 1.0).amp + pair_cat_superposition(cs, g, 0, 1, 1.0).amp)
                         .normalized();
    const double k2 = effective_params(p).kappa2;
    const ValidationReport rep =
        validate_elimination(p, cutoff, outer(plus, plus), v.at("horizon").get<double>() / k2, positive_int(v, "steps"));
    j["validation"] = io::to_json(rep);
    cut["validation_per_mode"] = cutoff;
    extra["max_trace_distance"] = rep.max_trace_distance;
  }
  if (has("readout")) {
    const json& r = cfg.at("readout");
    const double eps = r.at("eps").get<double>(), kc = r.at("kappa_c").get<double>();
    const int cutoff = positive_int(r, "cutoff");
    json rows = json::array();
    for (int d : nonempty<int>(r, "deltas")) {
      const ReadoutResult res = readout_displacement(d, eps, kc, cutoff);
      json x = io::to_json(res);
      x["delta"] = d;
      x["expected_magnitude"] = 2.0 * eps * std::abs(d) / kc;
      rows.push_back(x);
    }
    j["readout"] = rows;
    cut["readout"] = cutoff;
  }
  if (has("demo")) {
    const json& d = cfg.at("demo");
    const int cutoff = positive_int(d, "cutoff");
    io::Csv csv({"loss", "input", "t", "fidelity", "pop_delta0", "pop_delta_plus", "pop_delta_minus"});
    json finals = json::array();
    for (const auto& loss : nonempty<std::string>(d, "losses"))
      for (const auto& in : nonempty<std::string>(d, "inputs")) {
        const auto [c0, c1] = logical_input(in);
        const AutonomousTrace t = autonomous_correction_demo(
            d.at("gamma").get<double>(), d.at("kappa2").get<double>(), d.at("kappa_f").get<double>(), loss, c0, c1,
            d.at("t_final").get<double>(), positive_int(d, "steps"), cutoff);
        for (size_t i = 0; i < t.times.size(); ++i)
          csv.add({loss, in, io::num(t.times[i]), io::num(t.fidelity[i]), io::num(t.pop_delta0[i]),
                   io::num(t.pop_delta_plus[i]), io::num(t.pop_delta_minus[i])});
        finals.push_back({{"loss", loss}, {"input", in}, {"final_fidelity", t.fidelity.back()}});
      }
    csv.write(out / "reservoir_demo.csv");
    j["demo"] = finals;
    extra["outputs"].push_back("reservoir_demo.csv");
    cut["demo_per_mode"] = cutoff;
  }
  io::write_json(out / "reservoir.json", j);
  extra["cutoffs"] = cut;
  extra["tolerances"] = tol;
  return extra;
}

// ---- junction ----

json run_junction(const json& cfg, const fs::path& out) {
  const auto codes = nonempty<std::string>(cfg, "codes");
  const auto sectors = nonempty<int>(cfg, "sectors");
  const auto betas = nonempty<double>(cfg, "betas");
  const int cutoff = positive_int(cfg, "cutoff");
  const double tail = cfg.at("max_tail").get<double>();
  json outputs = json::array();
  double max_imag = 0.0;
  for (const auto& name : codes) {
    if (name != "cat" && name != "paircat") throw ConfigError("junction codes are cat and paircat");
    std::vector<io::JunctionRow> rows;
    for (int s : sectors) {
      const CodeSpace c = name == "cat" ? cat_code(cutoff, cfg.at("alpha").get<double>(), s, tail)
                                        : paircat_code(cutoff, cfg.at("gamma").get<double>(), s, tail);
      for (double b : betas) {
        const JunctionResult r = name == "cat" ? junction_z(c, b) : junction_z(c, b, b);
        max_imag = std::max(max_imag, std::abs(r.c_minus.imag()));
        rows.push_back({s, b, r.c_minus.real()});
      }
    }
    const std::string file = "junction_" + name + ".csv";
    io::junction_csv(rows).write(out / file);
    outputs.push_back(file);
  }
  return {{"outputs", outputs},
          {"cutoffs", {{"per_mode", cutoff}}},
          {"tolerances", {{"max_tail", tail}}},
          {"max_imag_c_minus", max_imag}};
}

std::vector<CommandSpec> build() {
  std::vector<CommandSpec> v;
  v.push_back({"fig-dephasing",
               "Scaled logical dephasing rate versus gamma",
               with_globals({{"gammas", decimal_range(1, 25, 10.0)},
                             {"deltas", {0, 1, 2, 3}},
                             {"kappa_ns", {0.01, 5.0}},
                             {"kappa2", 1.0},
                             {"cutoff", 32}}),
               {{"--gammas", "/gammas", "gamma grid"},
                {"--deltas", "/deltas", "Delta sectors"},
                {"--kappa-ns", "/kappa_ns", "dephasing rates in units of kappa2"},
                {"--cutoff", "/cutoff", "chain cutoff"}},
               run_dephasing});
  v.push_back({"fig-lossprob",
               "pr(2) on the cat code and pr(1,1) on the pair-cat code",
               with_globals({{"nbars", nbar_grid()},
                             {"one_minus_eta", {0.01, 0.03, 0.05, 0.1, 0.2, 0.3}}}),
               {{"--nbars", "/nbars", "mean photon numbers"}, {"--one-minus-eta", "/one_minus_eta", "loss grid"}},
               run_lossprob});
  v.push_back({"fig-qfunc",
               "Pair-coherent Q distributions of five Delta = 0 states",
               with_globals({{"gamma", 2.0},
                             {"squeezing", 1.0},
                             {"cutoff", 40},
                             {"max_tail", 1e-8},
                             {"normalization_radius", 5.0},
                             {"grid", grid_defaults(3.0, 61)}}),
               {{"--gamma", "/gamma", "pair-coherent and pair-cat amplitude"},
                {"--cutoff", "/cutoff", "per-mode cutoff"}},
               run_qfunc});
  v.push_back({"fig-wigner",
               "Pair-coherent W distributions of the two logical pair-cat states",
               with_globals({{"gamma", 2.0},
                             {"delta", 0},
                             {"cutoff", 30},
                             {"max_tail", 1e-8},
                             {"radius", 20.0},
                             {"nr", 2001},
                             {"edge_tol", 1e-6},
                             {"grid", grid_defaults(3.0, 61)}}),
               {{"--gamma", "/gamma", "code amplitude"}, {"--delta", "/delta", "sector"}},
               run_wigner});
  v.push_back({"fig-fidelity",
               "Entanglement fidelity under uniform loss with transpose recovery",
               with_globals({{"codes", {"paircat3", "concat", "singlerail"}},
                             {"one_minus_eta", {0.01, 0.025, 0.05, 0.075, 0.1}},
                             {"nbar_per_mode", 1.08},
                             {"cutoff", 6},
                             {"kraus_tol", 1e-6},
                             {"max_tail", 1e-3}}),
               {{"--codes", "/codes", "comma-separated code names"},
                {"--one-minus-eta", "/one_minus_eta", "loss grid"},
                {"--cutoff", "/cutoff", "per-mode cutoff"}},
               run_fidelity});
  v.push_back({"kl-report",
               "Knill-Laflamme coefficients of loss monomials on a pair-cat code",
               with_globals({{"gamma", 2.0},
                             {"delta", 0},
                             {"cutoff", 30},
                             {"kmax", 3},
                             {"include_ab", true},
                             {"tol", 1e-9},
                             {"max_tail", 1e-8}}),
               {{"--gamma", "/gamma", "code amplitude"}, {"--delta", "/delta", "sector"}, {"--kmax", "/kmax", "largest power"}},
               run_kl});
  v.push_back({"lattice",
               "Three-mode syndrome decoding and correctability certification",
               with_globals({{"syndrome", json::array()},
                             {"window", 3},
                             {"certify", true},
                             {"nbar_per_mode", 1.08},
                             {"cutoff", 6},
                             {"weight", 2},
                             {"max_total", 2},
                             {"max_tail", 1e-3}}),
               {{"--syndrome", "/syndrome", "syndrome n m"}, {"--window", "/window", "table half-width"}},
               run_lattice});
  v.push_back({"reservoir",
               "Junction elimination checks, readout displacement and autonomous correction",
               with_globals({{"parts", {"rates", "validation", "readout", "demo"}},
                             {"rate_fit",
                              {{"g1", 0.01}, {"g2", 0.01}, {"delta", 1.0}, {"gamma_fg", 10.0}, {"gamma_eg", 0.1},
                               {"samples", 11}}},
                             {"validation",
                              {{"g1", 0.005},
                               {"g2", 0.005},
                               {"delta", 1.0},
                               {"gamma_fg", 0.02},
                               {"gamma_eg", 0.0},
                               {"state_gamma", 1.0},
                               {"cutoff", 4},
                               {"horizon", 1.0},
                               {"steps", 10}}},
                             {"readout", {{"deltas", {-2, -1, 1, 2}}, {"eps", 0.5}, {"kappa_c", 1.0}, {"cutoff", 30}}},
                             {"demo",
                              {{"gamma", 2.0},
                               {"kappa2", 1.0},
                               {"kappa_f", 1.0},
                               {"t_final", 20.0},
                               {"steps", 20},
                               {"cutoff", 20},
                               {"losses", {"none", "a", "b"}},
                               {"inputs", {"plus"}}}}}),
               {{"--parts", "/parts", "any of rates,validation,readout,demo"}},
               run_reservoir});
  v.push_back({"junction",
               "C- of the junction Z rotation versus displacement",
               with_globals({{"codes", {"cat", "paircat"}},
                             {"alpha", 2.0},
                             {"gamma", 2.0},
                             {"sectors", {0, 1}},
                             {"betas", decimal_range(0, 60, 20.0)},
                             {"cutoff", 30},
                             {"max_tail", 1e-8}}),
               {{"--betas", "/betas", "displacement grid"}, {"--codes", "/codes", "cat and/or paircat"}},
               run_junction});
  return v;
}

}  // namespace

const std::vector<CommandSpec>& commands() {
  static const std::vector<CommandSpec> v = build();
  return v;
}

void merge_checked(json& base, const json& patch, const std::string& where) {
  if (!patch.is_object()) throw ConfigError("config at " + (where.empty() ? "/" : where) + " must be an object");
  for (auto it = patch.begin(); it != patch.end(); ++it) {
    const std::string here = where + "/" + it.key();
    if (!base.contains(it.key())) throw ConfigError("unknown config key " + here);
    json& b = base[it.key()];
    if (b.is_object())
      merge_checked(b, it.value(), here);
    else
      b = coerce(b, it.value(), here);
  }
}

void apply_override(json& cfg, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError("override must look like key=value: " + assignment);
  std::string path = "/" + assignment.substr(0, eq);
  std::replace(path.begin(), path.end(), '.', '/');
  json patch;
  patch[json::json_pointer(path)] = parse_token(assignment.substr(eq + 1));
  merge_checked(cfg, patch);
}

void apply_flag(json& cfg, const std::string& path, const std::vector<std::string>& tokens) {
  const json::json_pointer p(path);
  const json& def = cfg.at(p);
  json value;
  if (def.is_array()) {
    value = json::array();
    for (const auto& t : tokens)
      if (!t.empty()) value.push_back(parse_token(t));
  } else {
    if (tokens.size() != 1) throw ConfigError("flag for " + path + " takes one value");
    value = parse_token(tokens.front());
  }
  json patch;
  patch[p] = value;
  merge_checked(cfg, patch);
}

}  // namespace paircat::cli
