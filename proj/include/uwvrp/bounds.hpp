#pragma once

// Guaranteed fractions of the k-vehicle optimum collected by the greedy multi-pass
// algorithm, evaluated exactly:
//
//   P(1) = 1 / (3g)
//   P(k) = (3g k^2 - (3g + 1) k + 1) / (3g k^2) * P(k-1) + 1 / (3g k)
//
// where g >= 1 is the sub-optimality factor of the trimmed single-vehicle solver.

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "uwvrp/ratio.hpp"

namespace uwvrp {

inline Ratio p_gamma(long k, const Ratio& gamma) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (gamma < 1) throw std::invalid_argument("gamma must be at least 1");
  Ratio three_g = 3 * gamma;
  Ratio p = 1 / three_g;
  for (long j = 2; j <= k; ++j) {
    Ratio kk(j);
    Ratio step = (three_g * kk * kk - (three_g + 1) * kk + 1) / (three_g * kk * kk);
    p = step * p + 1 / (three_g * kk);
  }
  p.canonicalize();
  return p;
}

struct GuaranteeRow {
  long k = 1;
  Ratio gamma = 1;
  Ratio value;
  std::string decimal_preview;
};

using GuaranteeTable = std::vector<GuaranteeRow>;

/// One row per (k, gamma), k-major, in input order; previews rounded half-even.
inline GuaranteeTable bounds_table(std::span<const long> ks, std::span<const Ratio> gammas, unsigned places = 4) {
  GuaranteeTable table;
  for (long k : ks)
    for (const Ratio& g : gammas) {
      Ratio v = p_gamma(k, g);
      table.push_back({k, g, v, decimal_preview(v, places)});
    }
  return table;
}

/// True when the guarantee beats the 1/(3g + 1) fraction of the plain orienteering-style analysis.
inline bool beats_baseline(long k, const Ratio& gamma) { return p_gamma(k, gamma) > 1 / (3 * gamma + 1); }

}  // namespace uwvrp
