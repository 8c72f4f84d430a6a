#pragma once

// Period grids, half-unit trimming and unit-period expansion with the even/odd split.
//
// A window that starts exactly on a grid division is treated as if it started a
// negligible amount earlier. No epsilon is ever subtracted; the closed-form
// index rules below are what that perturbation produces in the limit.

#include <cstdint>
#include <map>

#include "uwvrp/instance.hpp"

namespace uwvrp {

/// Period i is [origin + i*length, origin + (i+1)*length).
struct PeriodGrid {
  Ratio origin;
  Ratio length;

  Window period(std::int64_t i) const {
    Ratio start = origin + Ratio(i) * length;
    return {start, start + length};
  }
};

/// An instance whose effective windows each coincide with exactly one grid period.
/// `base` must outlive this object.
struct TrimmedInstance {
  const Instance* base = nullptr;
  PeriodGrid grid;
  std::map<RequestIndex, std::int64_t> assignment;

  const Instance& instance() const { return *base; }

  Window effective_window(RequestIndex id) const { return grid.period(assignment.at(id)); }

  std::set<RequestIndex> requests() const {
    std::set<RequestIndex> ids;
    for (const auto& [id, period] : assignment) ids.insert(id);
    return ids;
  }
};

inline WindowMap effective_windows(const TrimmedInstance& t) {
  WindowMap windows;
  for (const auto& [id, period] : t.assignment) windows.emplace(id, t.grid.period(period));
  return windows;
}

/// Half-period index of the trimmed window for a unit window starting at `release`:
/// the first division at or after the release, i.e. ceil(2 * release).
inline std::int64_t trimmed_period_index(const Ratio& release) { return ceil_to_int(Ratio(release * 2)); }

/// First of the two unit periods a window intersects; an integer release is
/// perturbed earlier, so the window falls in periods release-1 and release.
inline std::int64_t expanded_first_period(const Ratio& release) { return ceil_to_int(release) - 1; }

/// Trims every request to the half-unit period wholly contained in its window.
inline TrimmedInstance trim_half_unit(const Instance& inst) {
  TrimmedInstance t{&inst, {Ratio(0), Ratio(1, 2)}, {}};
  for (RequestIndex i = 0; i < inst.request_count(); ++i)
    t.assignment.emplace(i, trimmed_period_index(inst.request(i).release));
  return t;
}

struct ExpandedPartition {
  TrimmedInstance even;  // first unit period even: grid origin 0, length 2
  TrimmedInstance odd;   // first unit period odd: grid origin 1, length 2
};

/// Doubles each window to the two unit periods it intersects and splits the
/// requests by the parity of the first of those periods.
inline ExpandedPartition expand_and_partition(const Instance& inst) {
  ExpandedPartition parts{{&inst, {Ratio(0), Ratio(2)}, {}}, {&inst, {Ratio(1), Ratio(2)}, {}}};
  for (RequestIndex i = 0; i < inst.request_count(); ++i) {
    std::int64_t p = expanded_first_period(inst.request(i).release);
    // floor division keeps negative first periods (release 0) on the right grid cell
    std::int64_t q = p >= 0 ? p / 2 : -((1 - p) / 2);
    if (p - 2 * q == 0)
      parts.even.assignment.emplace(i, q);
    else
      parts.odd.assignment.emplace(i, q);
  }
  return parts;
}

inline bool in_even_set(const Ratio& release) {
  std::int64_t p = expanded_first_period(release);
  return p % 2 == 0;
}

}  // namespace uwvrp
