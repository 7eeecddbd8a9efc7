#pragma once

// Fixed-range histograms of the order parameter and a bimodality report
// (the two highest local maxima and the valley between them). The range is
// pinned to [-0.5, 0.5] by default so bins align across runs regardless of
// the data extent.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace qca {

struct HistogramOptions {
  double lo = -0.5;
  double hi = 0.5;
  double bin_width = 0.005;

  void validate() const {
    if (!(hi > lo)) throw std::invalid_argument("HistogramOptions: hi must exceed lo");
    if (!(bin_width > 0.0)) throw std::invalid_argument("HistogramOptions: bin_width must be > 0");
    const double ratio = (hi - lo) / bin_width;
    if (ratio > 1e7) throw std::invalid_argument("HistogramOptions: too many bins");
    if (std::abs(ratio - std::round(ratio)) > 1e-9 * std::max(1.0, ratio))
      throw std::invalid_argument("HistogramOptions: bin_width must evenly divide the range");
  }
};

struct Histogram {
  double lo = -0.5;
  double hi = 0.5;
  double bin_width = 0.005;
  std::vector<std::size_t> counts;
  std::size_t total = 0;

  std::size_t n_bins() const { return counts.size(); }
  double bin_center(std::size_t i) const { return lo + (double(i) + 0.5) * bin_width; }
};

inline Histogram build_histogram(const std::vector<double>& values,
                                 const HistogramOptions& opts = {}) {
  opts.validate();
  Histogram h;
  h.lo = opts.lo;
  h.hi = opts.hi;
  h.bin_width = opts.bin_width;
  const std::size_t n_bins = std::size_t(std::llround((opts.hi - opts.lo) / opts.bin_width));
  h.counts.assign(n_bins, 0);
  for (double v : values) {
    if (!std::isfinite(v)) throw std::invalid_argument("build_histogram: non-finite value");
    // values at (or numerically beyond) the range ends land in the edge bins
    const double pos = (v - opts.lo) / opts.bin_width;
    const std::size_t bin =
        std::size_t(std::clamp<long long>(std::llround(std::floor(pos)), 0, (long long)n_bins - 1));
    ++h.counts[bin];
    ++h.total;
  }
  return h;
}

// Indices of local maxima with plateaus merged: a run of equal counts is one
// maximum (reported at its middle bin) when both flanking bins are strictly
// smaller; chain ends count as open flanks.
inline std::vector<std::size_t> local_maxima(const Histogram& h) {
  std::vector<std::size_t> maxima;
  const std::size_t n = h.counts.size();
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && h.counts[j + 1] == h.counts[i]) ++j;
    const bool left_ok = (i == 0) || (h.counts[i - 1] < h.counts[i]);
    const bool right_ok = (j + 1 == n) || (h.counts[j + 1] < h.counts[i]);
    if (left_ok && right_ok && h.counts[i] > 0) maxima.push_back((i + j) / 2);
    i = j + 1;
  }
  return maxima;
}

struct BimodalityReport {
  std::size_t n_maxima = 0;
  bool bimodal = false;  // exactly two local maxima
  // peaks ordered by bin center; meaningful when n_maxima >= 2
  double peak_lo_center = 0.0, peak_hi_center = 0.0;
  std::size_t peak_lo_count = 0, peak_hi_count = 0;
  double valley_center = 0.0;
  std::size_t valley_count = 0;
};

inline BimodalityReport bimodality_report(const Histogram& h) {
  BimodalityReport r;
  const auto maxima = local_maxima(h);
  r.n_maxima = maxima.size();
  r.bimodal = (maxima.size() == 2);
  if (maxima.size() < 2) {
    if (maxima.size() == 1) {
      r.peak_lo_center = r.peak_hi_center = h.bin_center(maxima[0]);
      r.peak_lo_count = r.peak_hi_count = h.counts[maxima[0]];
    }
    return r;
  }
  // two highest maxima (ties resolved toward lower center)
  std::vector<std::size_t> order(maxima);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return h.counts[a] > h.counts[b];
  });
  std::size_t p1 = order[0], p2 = order[1];
  if (p1 > p2) std::swap(p1, p2);
  r.peak_lo_center = h.bin_center(p1);
  r.peak_hi_center = h.bin_center(p2);
  r.peak_lo_count = h.counts[p1];
  r.peak_hi_count = h.counts[p2];
  std::size_t valley = p1;
  for (std::size_t k = p1; k <= p2; ++k)
    if (h.counts[k] < h.counts[valley]) valley = k;
  r.valley_center = h.bin_center(valley);
  r.valley_count = h.counts[valley];
  return r;
}

}  // namespace qca
