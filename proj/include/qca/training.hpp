#pragma once

// Supervised training of the jump-operator parameters (a, b): teacher-data
// generation, mean-squared order-parameter loss, central finite-difference
// gradients, plain steepest descent with a divergence detector, and loss
// landscape sweeps.

#include <array>
#include <limits>
#include <string>

#include "qca/channel.hpp"
#include "qca/parallel.hpp"
#include "qca/sampling.hpp"

namespace qca {

struct TrainingPair {
  ProductStateSpec input;
  double target_mx = 0.0;  // desired output-layer magnetization, in [-1/2, 1/2]
};

struct TrainingData {
  std::vector<TrainingPair> pairs;
  double target_spread = 0.0;  // max - min over targets
  bool degenerate = false;     // targets collapsed toward a single value
};

// Default training inputs: a spin-flip-balanced quadruple at
// m0x in {+0.4, -0.4, +0.25, -0.25}, m0y = 0, m0z = +sqrt(1/4 - m0x^2).
inline std::vector<ProductStateSpec> default_training_inputs() {
  std::vector<ProductStateSpec> specs;
  std::uint64_t id = 0;
  for (double m0x : {0.4, 0.25}) {
    const double m0z = std::sqrt(0.25 - m0x * m0x);
    const ProductStateSpec base = spec_from_bloch(id, m0x, 0.0, m0z);
    specs.push_back(base);
    specs.push_back(z2_partner(base));
    id += 2;
  }
  return specs;
}

// final-layer magnetization of one input under the channel with jump jp
inline double evolved_output_mx(const JumpParams& jp, const ProductStateSpec& input,
                                const ModelParams& params, const EvolveOptions& opt) {
  const ChannelEngine engine(params, jp, opt);
  return engine.evolve(to_layer_state(input, params.n_sites), params.depth).mx.back();
}

// Evolves each input through the teacher channel and records the final-layer
// magnetization as its target. Flags the set as degenerate when the targets
// collapse within degeneracy_tol (an unimodal teacher cannot label classes).
inline TrainingData generate_training_data(const JumpParams& teacher_jp,
                                           const std::vector<ProductStateSpec>& inputs,
                                           const ModelParams& params, const EvolveOptions& opt = {},
                                           double degeneracy_tol = 0.05) {
  if (inputs.empty()) throw std::invalid_argument("generate_training_data: no inputs");
  TrainingData data;
  data.pairs.reserve(inputs.size());
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto& in : inputs) {
    TrainingPair pair;
    pair.input = in;
    pair.target_mx = evolved_output_mx(teacher_jp, in, params, opt);
    lo = std::min(lo, pair.target_mx);
    hi = std::max(hi, pair.target_mx);
    data.pairs.push_back(std::move(pair));
  }
  data.target_spread = hi - lo;
  data.degenerate = data.target_spread < degeneracy_tol;
  return data;
}

// (1/P) sum_nu [ m_x(rho_out^nu) - target^nu ]^2
inline double loss(const JumpParams& jp, const std::vector<TrainingPair>& pairs,
                   const ModelParams& params, const EvolveOptions& opt = {}) {
  if (pairs.empty()) throw std::invalid_argument("loss: no training pairs");
  double acc = 0.0;
  for (const auto& pair : pairs) {
    const double diff = evolved_output_mx(jp, pair.input, params, opt) - pair.target_mx;
    acc += diff * diff;
  }
  return acc / double(pairs.size());
}

// central finite differences in (a, b); four loss evaluations
inline std::array<double, 2> gradient(const JumpParams& jp, const std::vector<TrainingPair>& pairs,
                                      const ModelParams& params, const EvolveOptions& opt = {},
                                      double h = 1e-3) {
  if (!(h > 0.0)) throw std::invalid_argument("gradient: h must be > 0");
  const auto probe = [&](double a, double b) {
    JumpParams q;
    q.a = a;
    q.b = b;
    return loss(q, pairs, params, opt);
  };
  return {(probe(jp.a + h, jp.b) - probe(jp.a - h, jp.b)) / (2.0 * h),
          (probe(jp.a, jp.b + h) - probe(jp.a, jp.b - h)) / (2.0 * h)};
}

struct TrainOptions {
  double epsilon = 80.0;             // learning rate
  std::size_t repetitions = 100;     // descent steps
  double h = 1e-3;                   // finite-difference step
  std::size_t divergence_window = 5;  // consecutive loss increases before abort

  void validate() const {
    if (repetitions < 1) throw std::invalid_argument("TrainOptions: repetitions must be >= 1");
    if (!(epsilon >= 0.0)) throw std::invalid_argument("TrainOptions: epsilon must be >= 0");
    if (!(h > 0.0)) throw std::invalid_argument("TrainOptions: h must be > 0");
    if (divergence_window < 2) throw std::invalid_argument("TrainOptions: window too small");
  }
};

enum class TrainStatus { kCompleted, kDiverged };

struct TrainingRun {
  std::vector<JumpParams> path;      // parameters before each step + final
  std::vector<double> loss_history;  // loss at each path entry
  TrainStatus status = TrainStatus::kCompleted;
  std::string diagnostic;

  const JumpParams& final_params() const { return path.back(); }
  double initial_loss() const { return loss_history.front(); }
  double final_loss() const { return loss_history.back(); }
};

// steepest descent: (a, b) <- (a, b) - epsilon * grad
inline TrainingRun train(const JumpParams& init_jp, const std::vector<TrainingPair>& pairs,
                         const ModelParams& params, const EvolveOptions& opt = {},
                         const TrainOptions& topt = {}) {
  topt.validate();
  TrainingRun run;
  JumpParams jp = init_jp;
  run.path.push_back(jp);
  run.loss_history.push_back(loss(jp, pairs, params, opt));
  std::size_t rising = 0;
  for (std::size_t step = 0; step < topt.repetitions; ++step) {
    const auto g = gradient(jp, pairs, params, opt, topt.h);
    jp.a -= topt.epsilon * g[0];
    jp.b -= topt.epsilon * g[1];
    run.path.push_back(jp);
    run.loss_history.push_back(loss(jp, pairs, params, opt));
    const std::size_t last = run.loss_history.size() - 1;
    rising = run.loss_history[last] > run.loss_history[last - 1] ? rising + 1 : 0;
    if (rising >= topt.divergence_window) {
      run.status = TrainStatus::kDiverged;
      run.diagnostic = "loss increased for " + std::to_string(rising) +
                       " consecutive steps (step " + std::to_string(step + 1) + " of " +
                       std::to_string(topt.repetitions) + "); reduce epsilon";
      return run;
    }
  }
  run.status = TrainStatus::kCompleted;
  return run;
}

struct LossLandscape {
  std::vector<double> a_values;
  std::vector<double> b_values;
  std::vector<double> loss;  // a-major: loss[ia * b_values.size() + ib]

  double value(std::size_t ia, std::size_t ib) const { return loss[ia * b_values.size() + ib]; }
  double min_loss() const { return *std::min_element(loss.begin(), loss.end()); }
};

inline LossLandscape loss_landscape(const std::vector<double>& a_values,
                                    const std::vector<double>& b_values,
                                    const std::vector<TrainingPair>& pairs,
                                    const ModelParams& params, const EvolveOptions& opt = {},
                                    std::size_t n_threads = 0) {
  if (a_values.size() < 2 || b_values.size() < 2)
    throw std::invalid_argument("loss_landscape: need at least a 2x2 grid");
  LossLandscape land;
  land.a_values = a_values;
  land.b_values = b_values;
  land.loss.assign(a_values.size() * b_values.size(), 0.0);
  parallel_for(
      land.loss.size(),
      [&](std::size_t idx) {
        JumpParams jp;
        jp.a = a_values[idx / b_values.size()];
        jp.b = b_values[idx % b_values.size()];
        land.loss[idx] = loss(jp, pairs, params, opt);
      },
      n_threads);
  return land;
}

}  // namespace qca
