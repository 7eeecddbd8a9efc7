// Command-line entry point: ensemble evolution, histograms, phase diagrams,
// training, landscape sweeps, and numerical self-checks, all emitting
// plot-ready CSV/JSON with sibling metadata.
//
// Exit codes: 0 success, 2 config error, 3 numerical/runtime error,
// 4 validation-check failure (self-check subcommand uses 41..45 for single
// failing check classes, 4 when several fail).

#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qca/qca.hpp"

namespace {

using namespace qca;

constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kEngineError = 3;
constexpr int kCheckFailure = 4;

// self-check class codes
constexpr int kGateClass = 41;
constexpr int kCptpClass = 42;
constexpr int kSymmetryClass = 43;
constexpr int kEquivalenceClass = 44;
constexpr int kLindbladClass = 45;

struct CommonOpts {
  ModelParams params;
  JumpParams jump;
  EvolveOptions evolve;
  std::uint64_t seed = 1;
  std::size_t samples = 2000;
  std::size_t threads = 0;
};

void add_physical_options(CLI::App* cmd, ModelParams& p) {
  cmd->add_option("--omega", p.omega, "transverse field strength")->capture_default_str();
  cmd->add_option("--v", p.v, "Ising coupling")->capture_default_str();
  cmd->add_option("--kappa", p.kappa, "decay rate (unit of time)")->capture_default_str();
  cmd->add_option("--dt", p.dt, "physical time per layer")->capture_default_str();
}

void add_lattice_options(CLI::App* cmd, ModelParams& p) {
  cmd->add_option("--n", p.n_sites, "sites per layer")->capture_default_str();
  cmd->add_option("--depth", p.depth, "number of layers to evolve")->capture_default_str();
}

void add_chi_options(CLI::App* cmd, EvolveOptions& e) {
  cmd->add_option("--chi-mps", e.chi_mps, "state bond dimension cap")->capture_default_str();
  cmd->add_option("--chi-mpo", e.chi_mpo, "channel bond dimension cap")->capture_default_str();
}

void add_threads_option(CLI::App* cmd, std::size_t& threads) {
  cmd->add_option("--threads", threads, "worker threads (0 = hardware/QCA_THREADS)")
      ->capture_default_str();
}

nlohmann::json base_metadata(const std::string& command) {
  nlohmann::json j;
  j["version"] = kVersion;
  j["command"] = command;
  return j;
}

nlohmann::json params_json(const ModelParams& p) {
  return {{"omega", p.omega}, {"v", p.v},     {"kappa", p.kappa}, {"dt", p.dt},
          {"n", p.n_sites},   {"depth", p.depth}};
}

nlohmann::json jump_json(const JumpParams& jp) { return {{"a", jp.a}, {"b", jp.b}}; }

nlohmann::json evolve_json(const EvolveOptions& e) {
  return {{"chi_mps", e.chi_mps}, {"chi_mpo", e.chi_mpo}, {"rel_cutoff", e.rel_cutoff}};
}

// ----- evolve --------------------------------------------------------------------

int run_evolve(const CommonOpts& o, const std::filesystem::path& output,
               std::filesystem::path manifest) {
  o.params.validate();
  o.evolve.validate();
  if (o.samples < 2 || o.samples % 2 != 0)
    throw std::invalid_argument("--samples must be even and >= 2 (spin-flip-balanced ensemble)");

  const auto specs = sample_initial_states(o.samples / 2, o.seed);
  const ChannelEngine engine(o.params, o.jump, o.evolve);
  const std::size_t depth = o.params.depth;

  std::vector<std::vector<double>> mx(specs.size());
  std::vector<std::vector<double>> dw(specs.size());
  parallel_for(
      specs.size(),
      [&](std::size_t i) {
        const EvolveResult res =
            engine.evolve(to_layer_state(specs[i], o.params.n_sites), depth);
        mx[i] = res.mx;
        dw[i].reserve(res.stats.size());
        for (const auto& st : res.stats) dw[i].push_back(st.discarded_weight);
      },
      o.threads);

  std::vector<TrajectoryRow> rows;
  rows.reserve(specs.size() * (depth + 1));
  for (std::size_t i = 0; i < specs.size(); ++i)
    for (std::size_t t = 0; t <= depth; ++t)
      rows.push_back({specs[i].sample_id, t, mx[i][t]});

  if (manifest.empty()) {
    manifest = output;
    manifest.replace_extension();
    manifest += "_manifest.csv";
  }

  OutputGuard guard;
  guard.track(output);
  guard.track(manifest);
  guard.track(metadata_path(output));
  write_trajectory_csv(output, rows);
  write_manifest_csv(manifest, specs);

  nlohmann::json meta = base_metadata("evolve");
  meta["params"] = params_json(o.params);
  meta["jump"] = jump_json(o.jump);
  meta["numerics"] = evolve_json(o.evolve);
  meta["seed"] = o.seed;
  meta["samples"] = o.samples;
  meta["manifest"] = manifest.string();
  std::vector<double> layer_dw(depth, 0.0);
  for (const auto& d : dw)
    for (std::size_t t = 0; t < d.size(); ++t) layer_dw[t] = std::max(layer_dw[t], d[t]);
  meta["max_discarded_weight_per_layer"] = layer_dw;
  write_json_file(metadata_path(output), meta);
  guard.release();

  std::cout << "evolve: " << specs.size() << " trajectories x " << depth << " layers -> "
            << output.string() << '\n';
  return kOk;
}

// ----- hist ----------------------------------------------------------------------

int run_hist(const std::filesystem::path& input, std::size_t layer, double bin_width,
             const std::filesystem::path& output) {
  HistogramOptions opts;
  opts.bin_width = bin_width;
  opts.validate();

  const auto rows = read_trajectory_csv(input);
  std::vector<double> values;
  for (const auto& r : rows)
    if (r.layer == layer) values.push_back(r.mx);
  if (values.empty())
    throw std::runtime_error("layer " + std::to_string(layer) + " not present in " +
                             input.string());

  const Histogram h = build_histogram(values, opts);
  const BimodalityReport rep = bimodality_report(h);

  OutputGuard guard;
  guard.track(output);
  guard.track(metadata_path(output));
  write_histogram_csv(output, h);

  nlohmann::json meta = base_metadata("hist");
  meta["input"] = input.string();
  meta["layer"] = layer;
  meta["bin_width"] = bin_width;
  meta["count"] = values.size();
  meta["bimodality"] = {{"n_maxima", rep.n_maxima},
                        {"bimodal", rep.bimodal},
                        {"peak_lo_center", rep.peak_lo_center},
                        {"peak_lo_count", rep.peak_lo_count},
                        {"peak_hi_center", rep.peak_hi_center},
                        {"peak_hi_count", rep.peak_hi_count},
                        {"valley_center", rep.valley_center},
                        {"valley_count", rep.valley_count}};
  write_json_file(metadata_path(output), meta);
  guard.release();

  std::cout << "hist: " << values.size() << " values at layer " << layer << ", " << rep.n_maxima
            << " local maxima";
  if (rep.n_maxima >= 2)
    std::cout << "; peaks at " << rep.peak_lo_center << " and " << rep.peak_hi_center
              << ", valley at " << rep.valley_center;
  std::cout << (rep.bimodal ? " (bimodal)" : "") << '\n';
  return kOk;
}

// ----- phase-diagram --------------------------------------------------------------

int run_phase_diagram(const std::string& closure, const ModelParams& base, double omega_min,
                      double omega_max, std::size_t n_omega, double v_min, double v_max,
                      std::size_t n_v, std::size_t q, double t_max, std::size_t threads,
                      const std::filesystem::path& output) {
  if (n_omega < 2 || n_v < 2) throw std::invalid_argument("grid needs >= 2 points per axis");
  if (q < 1) throw std::invalid_argument("--q must be >= 1");
  if (!(base.kappa > 0.0)) throw std::invalid_argument("--kappa must be positive");

  OdeOptions opts = OdeOptions::defaults(base.kappa);
  if (t_max > 0.0) opts.t_max = t_max;
  const auto omegas = linspace(omega_min, omega_max, n_omega);
  const auto vs = linspace(v_min, v_max, n_v);

  const PhaseDiagramGrid grid =
      closure == "mf" ? mf_phase_diagram(base, omegas, vs, double(q), &opts, threads)
                      : corr_phase_diagram(base, omegas, vs, double(q), &opts, threads);

  OutputGuard guard;
  guard.track(output);
  guard.track(metadata_path(output));
  write_phase_diagram_csv(output, grid, closure == "nn" ? "nn" : std::string());

  std::size_t n_converged = 0;
  for (bool c : grid.converged) n_converged += c ? 1 : 0;

  nlohmann::json meta = base_metadata("phase-diagram");
  meta["closure"] = closure;
  meta["kappa"] = base.kappa;
  meta["q"] = q;
  meta["omega_range"] = {omega_min, omega_max};
  meta["v_range"] = {v_min, v_max};
  meta["grid"] = {n_omega, n_v};
  meta["t_max"] = opts.t_max;
  meta["converged_points"] = n_converged;
  meta["total_points"] = grid.converged.size();
  write_json_file(metadata_path(output), meta);
  guard.release();

  std::cout << "phase-diagram (" << closure << "): " << n_omega << "x" << n_v << " grid, "
            << n_converged << "/" << grid.converged.size() << " converged -> " << output.string()
            << '\n';
  return kOk;
}

// ----- train / landscape ------------------------------------------------------------

int run_train(const CommonOpts& o, const JumpParams& teacher, const TrainOptions& topt,
              const std::filesystem::path& output) {
  o.params.validate();
  o.evolve.validate();
  topt.validate();

  const TrainingData data =
      generate_training_data(teacher, default_training_inputs(), o.params, o.evolve);
  if (data.degenerate)
    std::cerr << "warning: teacher targets are degenerate (spread " << data.target_spread
              << "); training cannot separate classes\n";

  const TrainingRun run = train(o.jump, data.pairs, o.params, o.evolve, topt);

  nlohmann::json j = training_run_to_json(run);
  j["metadata"] = base_metadata("train");
  j["metadata"]["params"] = params_json(o.params);
  j["metadata"]["teacher"] = jump_json(teacher);
  j["metadata"]["init"] = jump_json(o.jump);
  j["metadata"]["numerics"] = evolve_json(o.evolve);
  j["metadata"]["epsilon"] = topt.epsilon;
  j["metadata"]["repetitions"] = topt.repetitions;
  j["metadata"]["fd_step"] = topt.h;
  auto& pairs = j["pairs"] = nlohmann::json::array();
  for (const auto& p : data.pairs)
    pairs.push_back({{"m0x", p.input.m0x},
                     {"m0y", p.input.m0y},
                     {"m0z", p.input.m0z},
                     {"target_mx", p.target_mx}});
  j["target_spread"] = data.target_spread;
  j["degenerate_targets"] = data.degenerate;

  OutputGuard guard;
  guard.track(output);
  write_json_file(output, j);
  guard.release();

  std::cout << "train: loss " << run.initial_loss() << " -> " << run.final_loss() << " in "
            << run.loss_history.size() - 1 << " steps; final (a, b) = ("
            << run.final_params().a << ", " << run.final_params().b << ") -> "
            << output.string() << '\n';
  if (run.status == TrainStatus::kDiverged) {
    std::cerr << "training diverged: " << run.diagnostic << '\n';
    return kEngineError;
  }
  return kOk;
}

int run_landscape(const CommonOpts& o, const JumpParams& teacher, double a_min, double a_max,
                  std::size_t n_a, double b_min, double b_max, std::size_t n_b,
                  const std::filesystem::path& output) {
  o.params.validate();
  o.evolve.validate();
  if (n_a < 2 || n_b < 2) throw std::invalid_argument("landscape grid needs >= 2 per axis");

  const TrainingData data =
      generate_training_data(teacher, default_training_inputs(), o.params, o.evolve);
  const LossLandscape land = loss_landscape(linspace(a_min, a_max, n_a),
                                            linspace(b_min, b_max, n_b), data.pairs, o.params,
                                            o.evolve, o.threads);

  OutputGuard guard;
  guard.track(output);
  guard.track(metadata_path(output));
  write_landscape_csv(output, land);

  const auto it = std::min_element(land.loss.begin(), land.loss.end());
  const std::size_t idx = std::size_t(it - land.loss.begin());
  nlohmann::json meta = base_metadata("landscape");
  meta["params"] = params_json(o.params);
  meta["teacher"] = jump_json(teacher);
  meta["numerics"] = evolve_json(o.evolve);
  meta["a_range"] = {a_min, a_max};
  meta["b_range"] = {b_min, b_max};
  meta["grid"] = {n_a, n_b};
  meta["min_loss"] = *it;
  meta["argmin"] = {land.a_values[idx / land.b_values.size()],
                    land.b_values[idx % land.b_values.size()]};
  write_json_file(metadata_path(output), meta);
  guard.release();

  std::cout << "landscape: " << n_a << "x" << n_b << " grid, min loss " << *it << " at (a, b) = ("
            << meta["argmin"][0].get<double>() << ", " << meta["argmin"][1].get<double>()
            << ") -> " << output.string() << '\n';
  return kOk;
}

// ----- oracle-check -----------------------------------------------------------------

struct CheckResult {
  std::string name;
  int check_class = kCheckFailure;
  bool pass = false;
  bool informational = false;  // reported but not asserted
  double measured = 0.0;
  double threshold = 0.0;
  std::string note;
};

int run_oracle_check(CommonOpts o, std::size_t n, bool corrupt_gate,
                     const std::filesystem::path& json_out) {
  if (n < 1 || n > 5) throw std::invalid_argument("--n must be in [1, 5] for the dense oracle");
  o.params.n_sites = n;
  o.params.validate();
  o.evolve.validate();

  std::vector<CheckResult> checks;

  // 1. gate unitarity (the corruption hook is a negative-control for this
  //    check only)
  {
    auto gates = build_gate_sequence(o.params, o.jump);
    if (corrupt_gate) gates.front().matrix(0, 0) += 1e-3;
    double worst = 0.0;
    for (const auto& g : gates) worst = std::max(worst, unitarity_defect(g.matrix));
    checks.push_back({"gate-unitarity", kGateClass, worst <= 1e-10, false, worst, 1e-10, ""});
  }

  const DenseChannel chan = build_dense_channel(o.params, o.jump);

  // 2. trace preservation and complete positivity
  {
    const double tp = chan.trace_preservation_defect();
    checks.push_back({"trace-preservation", kCptpClass, tp <= 1e-10, false, tp, 1e-10, ""});
    const Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(chan.choi());
    const double min_eig = es.eigenvalues().minCoeff();
    checks.push_back({"complete-positivity", kCptpClass, min_eig >= -1e-10, false, min_eig,
                      -1e-10, "minimum Choi eigenvalue"});
  }

  // 3. weak spin-flip symmetry at the channel level
  {
    const ComplexMatrix s = chan.superop();
    const ComplexMatrix p = parity_superop(n);
    const double comm = (s * p - p * s).norm();
    checks.push_back({"weak-symmetry", kSymmetryClass, comm <= 1e-10, false, comm, 1e-10, ""});
  }

  // 4. dense-vs-MPS evolution equivalence on a fixed input
  {
    const ProductStateSpec spec =
        spec_from_bloch(0, 0.3, 0.1, std::sqrt(0.25 - 0.09 - 0.01));
    const std::size_t depth = 5;
    DenseLayerState rho = dense_product_state(
        std::vector<ComplexMatrix>(n, site_density(spec)));
    const ChannelEngine engine(o.params, o.jump, o.evolve);
    EvolveResult res = engine.evolve(to_layer_state(spec, n), depth);
    double worst = 0.0;
    for (std::size_t t = 1; t <= depth; ++t) {
      rho = chan.apply(rho);
      worst = std::max(worst,
                       std::abs(dense_magnetization(rho, pauli_x(), n) - res.mx[t]));
    }
    Index exact_bond = 1;  // largest bond an exact state can need: 4^(n/2)
    for (std::size_t k = 0; k < n / 2; ++k) exact_bond *= 4;
    const bool informational = o.evolve.chi_mps < exact_bond;
    checks.push_back({"dense-vs-mps", kEquivalenceClass, informational || worst <= 1e-8,
                      informational, worst, 1e-8,
                      informational ? "chi_mps below the exact-representation bound; deviation reported, not asserted"
                                    : ""});
  }

  // 5. collision channel approaches exp(L dt) at the expected rate (N = 3)
  {
    ModelParams p3 = o.params;
    p3.n_sites = 3;
    std::vector<double> devs;
    for (double dt : {0.1, 0.05, 0.025}) {
      p3.dt = dt / p3.kappa;
      const ComplexMatrix lhs = build_dense_channel(p3, o.jump).superop();
      const ComplexMatrix rhs =
          matrix_exponential(lindblad_generator(p3, o.jump) * p3.dt);
      devs.push_back((lhs - rhs).norm());
    }
    const double ratio = std::min(devs[0] / devs[1], devs[1] / devs[2]);
    checks.push_back({"lindblad-limit", kLindbladClass, ratio >= 2.5, false, ratio, 2.5,
                      "worst deviation-shrink factor per dt halving at N=3"});
  }

  nlohmann::json report = base_metadata("oracle-check");
  report["params"] = params_json(o.params);
  report["jump"] = jump_json(o.jump);
  report["numerics"] = evolve_json(o.evolve);
  auto& arr = report["checks"] = nlohmann::json::array();

  std::vector<int> failed_classes;
  for (const auto& c : checks) {
    std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << ": measured " << c.measured
              << " (threshold " << c.threshold << ")";
    if (!c.note.empty()) std::cout << " [" << c.note << "]";
    std::cout << '\n';
    arr.push_back({{"name", c.name},
                   {"pass", c.pass},
                   {"informational", c.informational},
                   {"measured", c.measured},
                   {"threshold", c.threshold},
                   {"note", c.note}});
    if (!c.pass) failed_classes.push_back(c.check_class);
  }
  const bool all_pass = failed_classes.empty();
  report["all_pass"] = all_pass;
  if (!json_out.empty()) write_json_file(json_out, report);

  if (all_pass) {
    std::cout << "all checks passed\n";
    return kOk;
  }
  std::sort(failed_classes.begin(), failed_classes.end());
  failed_classes.erase(std::unique(failed_classes.begin(), failed_classes.end()),
                       failed_classes.end());
  return failed_classes.size() == 1 ? failed_classes.front() : kCheckFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"simulator and trainer for a dissipative quantum cellular automaton"};
  app.require_subcommand(1);
  // Config files are read by the root parser (subcommand-level configs are
  // never processed by CLI11), with options grouped under [subcommand]
  // sections. fallthrough() lets --config appear after the subcommand name;
  // it must precede add_subcommand so the flag is inherited. Unknown keys are
  // hard errors so misspelled options cannot be silently ignored.
  app.fallthrough();
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.set_config("--config", "", "TOML config file ([subcommand] sections hold the options)");
  int rc = kOk;

  // evolve
  auto* evolve = app.add_subcommand("evolve", "evolve a sampled ensemble and record m_x");
  CommonOpts eo;
  std::filesystem::path evolve_out = "trajectory.csv";
  std::filesystem::path evolve_manifest;
  add_physical_options(evolve, eo.params);
  add_lattice_options(evolve, eo.params);
  add_chi_options(evolve, eo.evolve);
  add_threads_option(evolve, eo.threads);
  evolve->add_option("--a", eo.jump.a, "jump parameter a")->capture_default_str();
  evolve->add_option("--b", eo.jump.b, "jump parameter b")->capture_default_str();
  evolve->add_option("--seed", eo.seed, "ensemble RNG seed")->capture_default_str();
  evolve->add_option("--samples", eo.samples, "total states (half drawn, half partners)")
      ->capture_default_str();
  evolve->add_option("--output", evolve_out, "trajectory CSV path")->capture_default_str();
  evolve->add_option("--manifest", evolve_manifest, "ensemble manifest CSV path");
  evolve->callback([&] { rc = run_evolve(eo, evolve_out, evolve_manifest); });

  // hist
  auto* hist = app.add_subcommand("hist", "histogram one layer of a trajectory file");
  std::filesystem::path hist_in, hist_out = "histogram.csv";
  std::size_t hist_layer = 8;
  double hist_bin = 0.005;
  hist->add_option("--input", hist_in, "trajectory CSV")->required();
  hist->add_option("--layer", hist_layer, "layer to histogram")->capture_default_str();
  hist->add_option("--bin-width", hist_bin, "bin width over [-0.5, 0.5]")->capture_default_str();
  hist->add_option("--output", hist_out, "histogram CSV path")->capture_default_str();
  hist->callback([&] { rc = run_hist(hist_in, hist_layer, hist_bin, hist_out); });

  // phase-diagram
  auto* pd = app.add_subcommand("phase-diagram", "stationary order parameter on an (omega, v) grid");
  ModelParams pd_params;
  std::string pd_closure = "mf";
  double pd_omega_min = 0.0, pd_omega_max = 4.0, pd_v_min = 0.0, pd_v_max = 10.0;
  std::size_t pd_n_omega = 81, pd_n_v = 81, pd_q = 2, pd_threads = 0;
  double pd_t_max = -1.0;
  std::filesystem::path pd_out = "phase_diagram.csv";
  pd->add_option("--closure", pd_closure, "mf (product) or nn (single-bond correlations)")
      ->check(CLI::IsMember({"mf", "nn"}))
      ->capture_default_str();
  pd->add_option("--kappa", pd_params.kappa, "decay rate")->capture_default_str();
  pd->add_option("--omega-min", pd_omega_min)->capture_default_str();
  pd->add_option("--omega-max", pd_omega_max)->capture_default_str();
  pd->add_option("--n-omega", pd_n_omega, "grid points along omega")->capture_default_str();
  pd->add_option("--v-min", pd_v_min)->capture_default_str();
  pd->add_option("--v-max", pd_v_max)->capture_default_str();
  pd->add_option("--n-v", pd_n_v, "grid points along v")->capture_default_str();
  pd->add_option("--q", pd_q, "coordination number")->capture_default_str();
  pd->add_option("--t-max", pd_t_max, "integration horizon (default 200/kappa)");
  add_threads_option(pd, pd_threads);
  pd->add_option("--output", pd_out, "phase diagram CSV path")->capture_default_str();
  pd->callback([&] {
    rc = run_phase_diagram(pd_closure, pd_params, pd_omega_min, pd_omega_max, pd_n_omega,
                           pd_v_min, pd_v_max, pd_n_v, pd_q, pd_t_max, pd_threads, pd_out);
  });

  // train
  auto* tr = app.add_subcommand("train", "descend the order-parameter loss from teacher data");
  CommonOpts to;
  to.jump = {-0.15, -1.0};
  JumpParams tr_teacher = JumpParams::teacher();
  TrainOptions tr_opts;
  std::filesystem::path tr_out = "training_run.json";
  add_physical_options(tr, to.params);
  add_lattice_options(tr, to.params);
  add_chi_options(tr, to.evolve);
  tr->add_option("--a", to.jump.a, "initial jump parameter a")->capture_default_str();
  tr->add_option("--b", to.jump.b, "initial jump parameter b")->capture_default_str();
  tr->add_option("--teacher-a", tr_teacher.a, "teacher jump parameter a")->capture_default_str();
  tr->add_option("--teacher-b", tr_teacher.b, "teacher jump parameter b")->capture_default_str();
  tr->add_option("--epsilon", tr_opts.epsilon, "learning rate")->capture_default_str();
  tr->add_option("--repetitions", tr_opts.repetitions, "descent steps")->capture_default_str();
  tr->add_option("--fd-step", tr_opts.h, "finite-difference step")->capture_default_str();
  tr->add_option("--output", tr_out, "training run JSON path")->capture_default_str();
  tr->callback([&] { rc = run_train(to, tr_teacher, tr_opts, tr_out); });

  // landscape
  auto* ls = app.add_subcommand("landscape", "loss over a (a, b) parameter grid");
  CommonOpts lo;
  JumpParams ls_teacher = JumpParams::teacher();
  double ls_a_min = -1.0, ls_a_max = 1.0, ls_b_min = -1.5, ls_b_max = 0.5;
  std::size_t ls_n_a = 41, ls_n_b = 41;
  std::filesystem::path ls_out = "landscape.csv";
  add_physical_options(ls, lo.params);
  add_lattice_options(ls, lo.params);
  add_chi_options(ls, lo.evolve);
  add_threads_option(ls, lo.threads);
  ls->add_option("--teacher-a", ls_teacher.a, "teacher jump parameter a")->capture_default_str();
  ls->add_option("--teacher-b", ls_teacher.b, "teacher jump parameter b")->capture_default_str();
  ls->add_option("--a-min", ls_a_min)->capture_default_str();
  ls->add_option("--a-max", ls_a_max)->capture_default_str();
  ls->add_option("--n-a", ls_n_a, "grid points along a")->capture_default_str();
  ls->add_option("--b-min", ls_b_min)->capture_default_str();
  ls->add_option("--b-max", ls_b_max)->capture_default_str();
  ls->add_option("--n-b", ls_n_b, "grid points along b")->capture_default_str();
  ls->add_option("--output", ls_out, "landscape CSV path")->capture_default_str();
  ls->callback([&] {
    rc = run_landscape(lo, ls_teacher, ls_a_min, ls_a_max, ls_n_a, ls_b_min, ls_b_max, ls_n_b,
                       ls_out);
  });

  // oracle-check
  auto* oc = app.add_subcommand("oracle-check",
                                "dense-oracle self-checks (gates, CPTP, symmetry, equivalence, "
                                "continuous-time limit)");
  CommonOpts oo;
  std::size_t oc_n = 4;
  bool oc_corrupt = false;
  std::filesystem::path oc_json;
  add_physical_options(oc, oo.params);
  add_chi_options(oc, oo.evolve);
  oc->add_option("--n", oc_n, "sites (<= 5)")->capture_default_str();
  oc->add_option("--a", oo.jump.a, "jump parameter a")->capture_default_str();
  oc->add_option("--b", oo.jump.b, "jump parameter b")->capture_default_str();
  oc->add_flag("--corrupt-gate", oc_corrupt,
               "negative-control testing hook: inject a non-unitary defect");
  oc->add_option("--json", oc_json, "also write a JSON report");
  oc->callback([&] { rc = run_oracle_check(oo, oc_n, oc_corrupt, oc_json); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kEngineError;
  }
  return rc;
}
