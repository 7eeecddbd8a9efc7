#pragma once

// Plot-ready data files: CSV writers with fixed headers and 17-significant-
// digit values, sibling JSON metadata, a trajectory-CSV reader for the
// histogram command, and an RAII guard that removes partial outputs when a
// run fails midway.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qca/histogram.hpp"
#include "qca/ode.hpp"
#include "qca/sampling.hpp"
#include "qca/training.hpp"

namespace qca {

inline std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {

inline std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path.string());
  return out;
}

inline void finish_output(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace detail

// Removes tracked files on destruction unless released; keeps failed runs
// from leaving partial outputs behind.
class OutputGuard {
 public:
  OutputGuard() = default;
  OutputGuard(const OutputGuard&) = delete;
  OutputGuard& operator=(const OutputGuard&) = delete;

  void track(const std::filesystem::path& path) { paths_.push_back(path); }
  void release() { paths_.clear(); }

  ~OutputGuard() {
    for (const auto& p : paths_) {
      std::error_code ec;
      std::filesystem::remove(p, ec);
    }
  }

 private:
  std::vector<std::filesystem::path> paths_;
};

// sibling metadata file: same stem, .json extension
inline std::filesystem::path metadata_path(const std::filesystem::path& data_path) {
  std::filesystem::path p = data_path;
  p.replace_extension(".json");
  return p;
}

inline void write_json_file(const std::filesystem::path& path, const nlohmann::json& j) {
  auto out = detail::open_output(path);
  out << j.dump(2) << '\n';
  detail::finish_output(out, path);
}

// ----- trajectory CSV ----------------------------------------------------------

struct TrajectoryRow {
  std::uint64_t sample_id = 0;
  std::size_t layer = 0;
  double mx = 0.0;
};

inline void write_trajectory_csv(const std::filesystem::path& path,
                                 const std::vector<TrajectoryRow>& rows) {
  auto out = detail::open_output(path);
  out << "sample_id,layer,mx\n";
  for (const auto& r : rows)
    out << r.sample_id << ',' << r.layer << ',' << format_g17(r.mx) << '\n';
  detail::finish_output(out, path);
}

inline std::vector<TrajectoryRow> read_trajectory_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trajectory file: " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != "sample_id,layer,mx")
    throw std::runtime_error("malformed trajectory file (bad header): " + path.string());
  std::vector<TrajectoryRow> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    TrajectoryRow r;
    const auto c1 = line.find(',');
    const auto c2 = c1 == std::string::npos ? std::string::npos : line.find(',', c1 + 1);
    try {
      if (c2 == std::string::npos) throw std::invalid_argument("field count");
      std::size_t used = 0;
      r.sample_id = std::stoull(line.substr(0, c1), &used);
      if (used != c1) throw std::invalid_argument("sample_id");
      const std::string layer_str = line.substr(c1 + 1, c2 - c1 - 1);
      r.layer = std::stoull(layer_str, &used);
      if (used != layer_str.size()) throw std::invalid_argument("layer");
      const std::string mx_str = line.substr(c2 + 1);
      r.mx = std::stod(mx_str, &used);
      if (used != mx_str.size()) throw std::invalid_argument("mx");
    } catch (const std::exception&) {
      throw std::runtime_error("malformed trajectory file at line " + std::to_string(lineno) +
                               ": " + path.string());
    }
    rows.push_back(r);
  }
  return rows;
}

// ----- ensemble manifest ---------------------------------------------------------

inline void write_manifest_csv(const std::filesystem::path& path,
                               const std::vector<ProductStateSpec>& specs) {
  auto out = detail::open_output(path);
  out << "sample_id,m0x,m0y,m0z,theta,phi,is_partner\n";
  for (const auto& s : specs)
    out << s.sample_id << ',' << format_g17(s.m0x) << ',' << format_g17(s.m0y) << ','
        << format_g17(s.m0z) << ',' << format_g17(s.theta) << ',' << format_g17(s.phi) << ','
        << (s.is_partner ? 1 : 0) << '\n';
  detail::finish_output(out, path);
}

// ----- phase diagram -------------------------------------------------------------

// `closure` tags the nearest-neighbor variant with an extra column; empty
// means the plain mean-field schema `omega,v,abs_mx`.
inline void write_phase_diagram_csv(const std::filesystem::path& path,
                                    const PhaseDiagramGrid& grid,
                                    const std::string& closure = std::string()) {
  auto out = detail::open_output(path);
  out << (closure.empty() ? "omega,v,abs_mx\n" : "omega,v,abs_mx,closure\n");
  for (std::size_t i = 0; i < grid.omegas.size(); ++i)
    for (std::size_t j = 0; j < grid.vs.size(); ++j) {
      out << format_g17(grid.omegas[i]) << ',' << format_g17(grid.vs[j]) << ','
          << format_g17(grid.value(i, j));
      if (!closure.empty()) out << ',' << closure;
      out << '\n';
    }
  detail::finish_output(out, path);
}

// ----- histogram -----------------------------------------------------------------

inline void write_histogram_csv(const std::filesystem::path& path, const Histogram& h) {
  auto out = detail::open_output(path);
  out << "bin_center,count\n";
  for (std::size_t i = 0; i < h.n_bins(); ++i)
    out << format_g17(h.bin_center(i)) << ',' << h.counts[i] << '\n';
  detail::finish_output(out, path);
}

// ----- training ------------------------------------------------------------------

inline void write_landscape_csv(const std::filesystem::path& path, const LossLandscape& land) {
  auto out = detail::open_output(path);
  out << "a,b,loss\n";
  for (std::size_t ia = 0; ia < land.a_values.size(); ++ia)
    for (std::size_t ib = 0; ib < land.b_values.size(); ++ib)
      out << format_g17(land.a_values[ia]) << ',' << format_g17(land.b_values[ib]) << ','
          << format_g17(land.value(ia, ib)) << '\n';
  detail::finish_output(out, path);
}

inline nlohmann::json training_run_to_json(const TrainingRun& run) {
  nlohmann::json j;
  j["status"] = run.status == TrainStatus::kCompleted ? "completed" : "diverged";
  if (!run.diagnostic.empty()) j["diagnostic"] = run.diagnostic;
  j["initial_loss"] = run.initial_loss();
  j["final_loss"] = run.final_loss();
  j["final_params"] = {{"a", run.final_params().a}, {"b", run.final_params().b}};
  auto& path = j["path"] = nlohmann::json::array();
  for (const auto& p : run.path) path.push_back({p.a, p.b});
  j["loss_history"] = run.loss_history;
  return j;
}

}  // namespace qca
