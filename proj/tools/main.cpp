// hypercopy: simulate / fit / analyze / measure / eval for the hyperedge
// copy model. Every run writes a manifest JSON next to its primary output;
// `hypercopy rerun <manifest>` replays the recorded invocation.

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hypercopy/asymptotics.hpp"
#include "hypercopy/generate.hpp"
#include "hypercopy/intersections.hpp"
#include "hypercopy/link_prediction.hpp"
#include "hypercopy/metrics.hpp"
#include "hypercopy/sem.hpp"
#include "hypercopy/tsv.hpp"

namespace {

using namespace hypercopy;
using nlohmann::ordered_json;

struct ExitWith {
  int code;
};

std::string fmt_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

std::vector<double> parse_csv_doubles(const std::string& text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::string tok =
        text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    try {
      out.push_back(std::stod(tok));
    } catch (...) {
      throw DataError("bad number '" + tok + "' in list '" + text + "'");
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

struct Manifest {
  std::string subcommand;
  std::vector<std::string> argv;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::uint64_t rng_seed = 0;
  bool has_seed = false;
};

void write_manifest(const Manifest& m, const std::string& path, double seconds) {
  ordered_json j;
  j["tool"] = std::string("hypercopy ") + kVersion;
  j["subcommand"] = m.subcommand;
  j["argv"] = m.argv;
  if (m.has_seed) j["rng_seed"] = m.rng_seed;
  j["inputs"] = m.inputs;
  j["outputs"] = m.outputs;
  j["wall_clock_seconds"] = seconds;
  std::ofstream out(path);
  if (!out) throw DataError("cannot open '" + path + "' for writing");
  out << j.dump(2) << "\n";
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open '" + path + "' for writing");
  return out;
}

ModelParams params_from_flags(const std::string& params_file, double eta,
                              const std::string& gamma_csv, const std::string& beta_csv) {
  if (!params_file.empty()) return ModelParams::from_json_file(params_file);
  if (gamma_csv.empty() || beta_csv.empty())
    throw CLI::ValidationError("--params or --eta/--gamma/--beta are required");
  ModelParams p;
  p.eta = eta;
  p.gamma = parse_csv_doubles(gamma_csv);
  p.beta = parse_csv_doubles(beta_csv);
  p.normalize_lengths();
  p.validate();
  return p;
}

// "log:K": K checkpoints per decade up to m, plus m itself; or an explicit
// comma-separated list of prefix sizes.
std::vector<std::size_t> parse_checkpoints(const std::string& spec, std::size_t m) {
  std::vector<std::size_t> pts;
  if (spec.rfind("log:", 0) == 0) {
    const int per_decade = std::stoi(spec.substr(4));
    if (per_decade < 1) throw DataError("log:<k> needs k >= 1");
    for (int i = 0;; ++i) {
      const double value = std::pow(10.0, static_cast<double>(i) / per_decade);
      const auto rounded = static_cast<std::size_t>(std::llround(value));
      if (rounded >= m) break;
      if (rounded >= 2 && (pts.empty() || rounded > pts.back())) pts.push_back(rounded);
    }
    if (m >= 2) pts.push_back(m);
  } else {
    for (double v : parse_csv_doubles(spec)) pts.push_back(static_cast<std::size_t>(v));
  }
  if (pts.empty()) throw DataError("no usable checkpoints in '" + spec + "'");
  return pts;
}

// ---------------------------------------------------------------------------

int cmd_simulate(const std::string& model, const ModelParams& params, std::size_t steps,
                 std::uint64_t seed, const std::string& seed_hg_path, bool no_timestamps,
                 const std::string& out_path, Manifest manifest) {
  const auto t0 = std::chrono::steady_clock::now();
  TemporalHypergraph seed_hg;
  if (seed_hg_path.empty()) {
    seed_hg = default_seed_hypergraph(params);
  } else {
    seed_hg = load_tsv_file(seed_hg_path, !no_timestamps).hypergraph;
    manifest.inputs.push_back(seed_hg_path);
  }

  SimulationResult result;
  if (model == "hcm")
    result = simulate_hcm(params, steps, seed_hg, seed);
  else if (model == "er")
    result = simulate_er(params, steps, seed_hg, seed);
  else if (model == "pa")
    result = simulate_pa(params, steps, seed_hg, seed);
  else
    throw CLI::ValidationError("--model must be hcm, er or pa");

  write_tsv_file(result.hypergraph, out_path);
  if (result.extant_clamp_count > 0)
    std::cerr << "note: clamped " << result.extant_clamp_count
              << " extant-node draws to the available pool\n";
  if (result.poisson_cap_count > 0)
    std::cerr << "note: capped " << result.poisson_cap_count << " Poisson draws\n";

  manifest.outputs.push_back(out_path);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_manifest(manifest, out_path + ".manifest.json", secs);
  return 0;
}

int cmd_fit(const std::string& input, int kbar, std::size_t batch_size,
            const std::string& ordering, std::uint64_t seed, double train_frac,
            std::size_t max_steps, bool no_timestamps, const std::string& true_params_path,
            const std::string& out_path, const std::string& trace_path, Manifest manifest) {
  const auto t0 = std::chrono::steady_clock::now();
  TemporalHypergraph h = load_tsv_file(input, !no_timestamps).hypergraph;

  SemConfig config;
  config.kbar = kbar;
  config.batch_size = batch_size;
  config.max_steps = max_steps;
  config.ordering = ordering == "temporal" ? Ordering::temporal : Ordering::shuffled;
  if (train_frac < 1.0)
    config.train_edges = static_cast<std::size_t>(
        std::ceil(train_frac * static_cast<double>(h.num_edges())));

  FitResult fit = sem_fit(h, config, seed);
  fit.params.to_json_file(out_path);
  manifest.outputs.push_back(out_path);

  if (!trace_path.empty()) {
    std::optional<ModelParams> truth;
    if (!true_params_path.empty()) {
      truth = ModelParams::from_json_file(true_params_path);
      manifest.inputs.push_back(true_params_path);
    }
    auto out = open_out(trace_path);
    out << "tau,eta,kl_gamma,kl_beta,seconds\n";
    for (const FitCheckpoint& cp : fit.trace.checkpoints) {
      out << cp.tau << ',' << fmt_double(cp.params.eta) << ',';
      if (truth) out << fmt_double(kl_divergence(truth->gamma, cp.params.gamma));
      out << ',';
      if (truth) out << fmt_double(kl_divergence(truth->beta, cp.params.beta));
      out << ',' << fmt_double(cp.seconds) << "\n";
    }
    manifest.outputs.push_back(trace_path);
  }

  if (!fit.trace.converged)
    std::cerr << "warning: fit did not converge within " << fit.trace.steps << " steps\n";
  if (fit.trace.skipped_samples > 0)
    std::cerr << "note: skipped " << fit.trace.skipped_samples
              << " sampled edges with no possible source\n";

  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_manifest(manifest, out_path + ".manifest.json", secs);
  return fit.trace.converged ? 0 : 3;
}

int cmd_analyze(const std::string& params_path, int kmax, int imax,
                const std::string& prefix, Manifest manifest) {
  const auto t0 = std::chrono::steady_clock::now();
  ModelParams params = ModelParams::from_json_file(params_path);

  ordered_json summary;
  summary["eta"] = params.eta;
  summary["mu_gamma"] = params.mu_gamma();
  summary["mu_beta"] = params.mu_beta();
  summary["mean_edge_size"] = mean_edge_size(params);
  try {
    summary["mean_degree"] = mean_degree(params);
  } catch (const DataError&) {
    summary["mean_degree"] = nullptr;
  }
  try {
    summary["zeta"] = powerlaw_exponent(params);
  } catch (const DataError&) {
    summary["zeta"] = nullptr;
  }

  StationaryEdgeSizeDist dist = stationary_edge_size_dist(params, kmax);
  summary["kmax"] = kmax;
  summary["size_dist_truncation_mass"] = dist.max_truncation_mass;
  summary["size_dist_residual"] = dist.solve.residual;
  {
    auto out = open_out(prefix + "_sizedist.csv");
    out << "size,probability\n";
    for (std::size_t i = 0; i < dist.probabilities.size(); ++i)
      out << (i + 1) << ',' << fmt_double(dist.probabilities[i]) << "\n";
    manifest.outputs.push_back(prefix + "_sizedist.csv");
  }

  IntersectionProfile profile = intersection_profile(params, imax);
  summary["imax"] = imax;
  summary["qtensor_eigenvalue"] = profile.solve().value;
  summary["qtensor_residual"] = profile.solve().residual;
  {
    auto out = open_out(prefix + "_qtensor.csv");
    out << "i,j,k,q\n";
    for (int i = 1; i <= imax; ++i)
      for (int j = 1; j <= imax; ++j)
        for (int k = 0; k <= imax; ++k)
          out << i << ',' << j << ',' << k << ',' << fmt_double(profile.q(i, j, k))
              << "\n";
    manifest.outputs.push_back(prefix + "_qtensor.csv");
  }
  {
    auto out = open_out(prefix + "_rk_pred.csv");
    out << "m,k,r_k\n";
    for (int decade = 1; decade <= 7; ++decade)
      for (int sub = 0; sub < 4; ++sub) {
        const auto m = static_cast<std::size_t>(
            std::llround(std::pow(10.0, decade + 0.25 * sub)));
        const std::vector<double> rk = predicted_rk(profile, m);
        for (int k = 0; k <= imax; ++k)
          out << m << ',' << k << ',' << fmt_double(rk[k]) << "\n";
      }
    manifest.outputs.push_back(prefix + "_rk_pred.csv");
  }

  {
    auto out = open_out(prefix + "_summary.json");
    out << summary.dump(2) << "\n";
    manifest.outputs.insert(manifest.outputs.begin(), prefix + "_summary.json");
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_manifest(manifest, prefix + "_manifest.json", secs);
  return 0;
}

int cmd_measure(const std::string& input, const std::string& what,
                const std::string& checkpoints_spec, int kmax, std::size_t dmin,
                bool no_timestamps, const std::string& out_path, Manifest manifest) {
  const auto t0 = std::chrono::steady_clock::now();
  TemporalHypergraph h = load_tsv_file(input, !no_timestamps).hypergraph;
  const EdgeIndex last = static_cast<EdgeIndex>(h.num_edges() - 1);

  auto out = open_out(out_path);
  if (what == "rk") {
    const auto checkpoints = parse_checkpoints(checkpoints_spec, h.num_edges());
    RkSeries series = rk_timeseries(h, checkpoints, kmax);
    out << "m";
    for (int k = 0; k <= kmax; ++k) out << ",r" << k;
    out << ",overflow\n";
    for (std::size_t row = 0; row < series.m.size(); ++row) {
      out << series.m[row];
      for (double r : series.rows[row].r) out << ',' << fmt_double(r);
      out << ',' << fmt_double(series.rows[row].overflow) << "\n";
    }
  } else if (what == "degrees" || what == "sizes") {
    const auto hist =
        what == "degrees" ? degree_histogram(h, last) : edge_size_histogram(h, last);
    out << (what == "degrees" ? "degree,count\n" : "size,count\n");
    for (const auto& [value, count] : hist) out << value << ',' << count << "\n";
  } else if (what == "slope") {
    const double zeta = tail_slope(degree_histogram(h, last), dmin);
    out << "dmin,zeta_hat\n" << dmin << ',' << fmt_double(zeta) << "\n";
  } else {
    throw CLI::ValidationError("--what must be rk, degrees, sizes or slope");
  }

  manifest.outputs.push_back(out_path);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_manifest(manifest, out_path + ".manifest.json", secs);
  return 0;
}

int cmd_eval(const std::string& input, const std::string& ordering,
             const std::string& negatives, double train_frac, std::size_t max_pos,
             std::uint64_t seed, int kbar, std::size_t max_sources,
             const std::string& median_source, std::size_t batch_size,
             std::size_t max_steps, bool no_timestamps, const std::string& out_path,
             const std::string& scores_path, Manifest manifest) {
  const auto t0 = std::chrono::steady_clock::now();
  TemporalHypergraph h = load_tsv_file(input, !no_timestamps).hypergraph;

  EvalConfig config;
  config.ordering = ordering == "temporal" ? Ordering::temporal : Ordering::shuffled;
  config.negatives =
      negatives == "matched" ? NegativeSampler::matched : NegativeSampler::halfswap;
  config.train_frac = train_frac;
  config.max_positives = max_pos;
  config.rng_seed = seed;
  config.kbar = kbar;
  config.max_sources = max_sources;
  config.batch_size = batch_size;
  config.max_steps = max_steps;
  config.median_source =
      median_source == "train" ? MedianSource::train : MedianSource::pooled;

  EvalReport report = evaluate(h, config);

  ordered_json j;
  j["auc"] = report.auc;
  j["f1"] = report.f1;
  j["threshold"] =
      std::isinf(report.threshold) ? ordered_json() : ordered_json(report.threshold);
  j["n_positives"] = report.n_positives;
  j["n_negatives"] = report.n_negatives;
  j["sentinel_scores"] = report.sentinel_scores;
  j["unseen_node_fraction"] = report.unseen_node_fraction;
  j["fit_converged"] = report.fit_converged;
  j["train_edges"] = report.train_edges;
  j["fitted"] = {{"eta", report.fitted.eta},
                 {"gamma", report.fitted.gamma},
                 {"beta", report.fitted.beta}};
  j["config"] = {{"ordering", ordering},
                 {"negatives", negatives},
                 {"train_frac", train_frac},
                 {"max_positives", max_pos},
                 {"rng_seed", seed},
                 {"kbar", kbar},
                 {"median", median_source}};
  {
    auto out = open_out(out_path);
    out << j.dump(2) << "\n";
    manifest.outputs.push_back(out_path);
  }
  if (!scores_path.empty()) {
    auto out = open_out(scores_path);
    out << "candidate_id,label,log_score\n";
    for (std::size_t i = 0; i < report.candidates.size(); ++i)
      out << i << ',' << (report.candidates[i].positive ? 1 : 0) << ','
          << fmt_double(report.candidates[i].log_score) << "\n";
    manifest.outputs.push_back(scores_path);
  }

  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_manifest(manifest, out_path + ".manifest.json", secs);
  return 0;
}

int dispatch(const std::vector<std::string>& args);

int cmd_rerun(const std::string& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in) throw DataError("cannot open '" + manifest_path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("manifest: ") + e.what());
  }
  if (!j.contains("argv")) throw DataError("manifest has no argv record");
  return dispatch(j["argv"].get<std::vector<std::string>>());
}

int dispatch(const std::vector<std::string>& args) {
  CLI::App app{"Growing-hypergraph copy model: simulation, asymptotics, fitting, "
               "measurement and link prediction"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("hypercopy ") + kVersion);

  // simulate ---------------------------------------------------------------
  auto* sim = app.add_subcommand("simulate", "Grow a hypergraph forward");
  std::string sim_model = "hcm", sim_gamma, sim_beta, sim_params, sim_seed_hg, sim_out;
  double sim_eta = 0.0;
  std::size_t sim_steps = 0;
  std::uint64_t sim_seed = 0;
  bool sim_no_ts = false;
  sim->add_option("--model", sim_model, "hcm | er | pa")->required();
  sim->add_option("--eta", sim_eta, "copy probability");
  sim->add_option("--gamma", sim_gamma, "extant-count distribution, comma separated");
  sim->add_option("--beta", sim_beta, "novel-count distribution, comma separated");
  sim->add_option("--params", sim_params, "params.json instead of --eta/--gamma/--beta");
  sim->add_option("--steps", sim_steps, "number of edges to add")->required();
  sim->add_option("--rng-seed", sim_seed, "64-bit seed")->required();
  sim->add_option("--seed-hg", sim_seed_hg, "seed hypergraph TSV");
  sim->add_flag("--no-timestamps", sim_no_ts, "seed TSV lines carry no timestamp column");
  sim->add_option("--out", sim_out, "output TSV")->required();

  // fit --------------------------------------------------------------------
  auto* fit = app.add_subcommand("fit", "Fit parameters by stochastic EM");
  std::string fit_input, fit_ordering = "temporal", fit_true, fit_out, fit_trace;
  int fit_kbar = 12;
  std::size_t fit_batch = 30, fit_max_steps = 100000;
  double fit_train_frac = 1.0;
  std::uint64_t fit_seed = 0;
  bool fit_no_ts = false;
  fit->add_option("--input", fit_input, "hypergraph TSV")->required();
  fit->add_option("--kbar", fit_kbar, "max count index of gamma/beta");
  fit->add_option("--batch-size", fit_batch, "edges per SEM step");
  fit->add_option("--ordering", fit_ordering, "temporal | shuffled");
  fit->add_option("--rng-seed", fit_seed, "64-bit seed");
  fit->add_option("--train-frac", fit_train_frac, "fit on this leading fraction");
  fit->add_option("--max-steps", fit_max_steps, "SEM step budget");
  fit->add_option("--true-params", fit_true, "params.json for KL columns in the trace");
  fit->add_flag("--no-timestamps", fit_no_ts, "input lines carry no timestamp column");
  fit->add_option("--out", fit_out, "fitted params.json")->required();
  fit->add_option("--trace", fit_trace, "per-checkpoint trace CSV");

  // analyze ----------------------------------------------------------------
  auto* ana = app.add_subcommand("analyze", "Closed-form asymptotics for parameters");
  std::string ana_params, ana_prefix;
  int ana_kmax = 30, ana_imax = 12;
  ana->add_option("--params", ana_params, "params.json")->required();
  ana->add_option("--kmax", ana_kmax, "edge-size truncation");
  ana->add_option("--imax", ana_imax, "intersection-tensor truncation");
  ana->add_option("--out-prefix", ana_prefix, "output path prefix")->required();

  // measure ----------------------------------------------------------------
  auto* mea = app.add_subcommand("measure", "Empirical structure of a hypergraph");
  std::string mea_input, mea_what, mea_checkpoints = "log:10", mea_out;
  int mea_kmax = 12;
  std::size_t mea_dmin = 10;
  bool mea_no_ts = false;
  mea->add_option("--input", mea_input, "hypergraph TSV")->required();
  mea->add_option("--what", mea_what, "rk | degrees | sizes | slope")->required();
  mea->add_option("--checkpoints", mea_checkpoints, "log:<per-decade> or explicit list");
  mea->add_option("--kmax", mea_kmax, "intersection bucket cutoff");
  mea->add_option("--dmin", mea_dmin, "tail cutoff for --what slope");
  mea->add_flag("--no-timestamps", mea_no_ts, "input lines carry no timestamp column");
  mea->add_option("--out", mea_out, "output CSV")->required();

  // eval -------------------------------------------------------------------
  auto* ev = app.add_subcommand("eval", "Hyperedge link-prediction benchmark");
  std::string ev_input, ev_ordering = "shuffled", ev_negatives = "matched";
  std::string ev_median = "pooled", ev_out, ev_scores;
  double ev_train_frac = 0.2;
  std::size_t ev_max_pos = 100000, ev_max_sources = 0, ev_batch = 30,
              ev_max_steps = 100000;
  std::uint64_t ev_seed = 0;
  int ev_kbar = 0;
  bool ev_no_ts = false;
  ev->add_option("--input", ev_input, "hypergraph TSV")->required();
  ev->add_option("--ordering", ev_ordering, "temporal | shuffled");
  ev->add_option("--negatives", ev_negatives, "matched | halfswap");
  ev->add_option("--train-frac", ev_train_frac, "leading fraction used for fitting");
  ev->add_option("--max-pos", ev_max_pos, "cap on positive examples");
  ev->add_option("--rng-seed", ev_seed, "64-bit seed");
  ev->add_option("--kbar", ev_kbar, "0: use the largest edge size");
  ev->add_option("--max-sources", ev_max_sources,
                 "abort if a candidate has more possible sources than this (0: uncapped)");
  ev->add_option("--median", ev_median, "pooled | train threshold pool");
  ev->add_option("--batch-size", ev_batch, "SEM batch size");
  ev->add_option("--max-steps", ev_max_steps, "SEM step budget");
  ev->add_flag("--no-timestamps", ev_no_ts, "input lines carry no timestamp column");
  ev->add_option("--out", ev_out, "report JSON")->required();
  ev->add_option("--scores", ev_scores, "per-candidate scores CSV");

  // rerun ------------------------------------------------------------------
  auto* rer = app.add_subcommand("rerun", "Replay a manifest");
  std::string rer_manifest;
  rer->add_option("manifest", rer_manifest, "manifest JSON")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints help text or the usage error
    throw ExitWith{code == 0 ? 0 : 1};
  }

  auto choice = [&](const std::string& value, std::initializer_list<const char*> allowed,
                    const char* flag) {
    for (const char* a : allowed)
      if (value == a) return;
    throw CLI::ValidationError(std::string(flag) + " got '" + value + "'");
  };

  Manifest manifest;
  manifest.argv = args;

  if (sim->parsed()) {
    choice(sim_model, {"hcm", "er", "pa"}, "--model");
    manifest.subcommand = "simulate";
    manifest.rng_seed = sim_seed;
    manifest.has_seed = true;
    if (!sim_params.empty()) manifest.inputs.push_back(sim_params);
    return cmd_simulate(sim_model, params_from_flags(sim_params, sim_eta, sim_gamma, sim_beta),
                        sim_steps, sim_seed, sim_seed_hg, sim_no_ts, sim_out, manifest);
  }
  if (fit->parsed()) {
    choice(fit_ordering, {"temporal", "shuffled"}, "--ordering");
    manifest.subcommand = "fit";
    manifest.rng_seed = fit_seed;
    manifest.has_seed = true;
    manifest.inputs.push_back(fit_input);
    return cmd_fit(fit_input, fit_kbar, fit_batch, fit_ordering, fit_seed, fit_train_frac,
                   fit_max_steps, fit_no_ts, fit_true, fit_out, fit_trace, manifest);
  }
  if (ana->parsed()) {
    manifest.subcommand = "analyze";
    manifest.inputs.push_back(ana_params);
    return cmd_analyze(ana_params, ana_kmax, ana_imax, ana_prefix, manifest);
  }
  if (mea->parsed()) {
    choice(mea_what, {"rk", "degrees", "sizes", "slope"}, "--what");
    manifest.subcommand = "measure";
    manifest.inputs.push_back(mea_input);
    return cmd_measure(mea_input, mea_what, mea_checkpoints, mea_kmax, mea_dmin, mea_no_ts,
                       mea_out, manifest);
  }
  if (ev->parsed()) {
    choice(ev_ordering, {"temporal", "shuffled"}, "--ordering");
    choice(ev_negatives, {"matched", "halfswap"}, "--negatives");
    choice(ev_median, {"pooled", "train"}, "--median");
    manifest.subcommand = "eval";
    manifest.rng_seed = ev_seed;
    manifest.has_seed = true;
    manifest.inputs.push_back(ev_input);
    return cmd_eval(ev_input, ev_ordering, ev_negatives, ev_train_frac, ev_max_pos, ev_seed,
                    ev_kbar, ev_max_sources, ev_median, ev_batch, ev_max_steps, ev_no_ts,
                    ev_out, ev_scores, manifest);
  }
  if (rer->parsed()) return cmd_rerun(rer_manifest);
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    return dispatch(args);
  } catch (const ExitWith& e) {
    return e.code;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return 0;  // --help / --version
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const ConvergenceError& e) {
    std::cerr << "did not converge: " << e.what() << "\n";
    return 3;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
