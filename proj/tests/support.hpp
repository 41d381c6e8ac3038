#pragma once

// Helpers shared by the unit tests and the acceptance binary.

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "nanopair/comm/transport.hpp"
#include "nanopair/core/config.hpp"
#include "nanopair/driver/simulation.hpp"

namespace testing_support {

using namespace nanopair;

/// Small LJ configuration on an n^3 fcc lattice.
inline SimConfig lj_config(int n, int steps = 100) {
  SimConfig c;
  c.unit_cells = {n, n, n};
  c.steps = steps;
  return c;
}

/// Runs `body(world)` on P in-process ranks.
inline void on_ranks(int ranks, const AABB& global, const std::function<void(RankWorld&)>& body,
                     bool sequential = false) {
  Transport t(ranks, sequential);
  run_ranks(t, [&](int r) {
    RankWorld world(t, r, global);
    body(world);
  });
}

/// Sorted global state after `steps` steps of `cfg` on `ranks` ranks.
template <ArrayLayout L = layout::RowMajor<>>
std::vector<ParticleRecord> run_state(const SimConfig& cfg, int ranks, int steps) {
  std::vector<ParticleRecord> out;
  const AABB global = global_domain(cfg);
  const auto dims = choose_rank_grid(ranks, global);
  on_ranks(ranks, global, [&](RankWorld& w) {
    Simulation<L> sim(w, cfg, dims);
    sim.setup();
    sim.run(steps);
    auto s = sim.global_state();
    if (w.rank() == 0) out = std::move(s);
  });
  return out;
}

/// Largest componentwise position difference between two sorted states, with
/// the minimum image applied so wrap-around at the box edge is not a jump.
inline double max_position_gap(const std::vector<ParticleRecord>& a, const std::vector<ParticleRecord>& b,
                               const AABB& global) {
  if (a.size() != b.size()) return INFINITY;
  double gap = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const Vec3 d = minimum_image(a[k].position - b[k].position, global);
    gap = std::max({gap, std::abs(d.x), std::abs(d.y), std::abs(d.z)});
  }
  return gap;
}

/// Pairs positions of two states by nearest match rather than sort order, so
/// that tiny differences cannot reorder lexicographic sorting. O(N^2).
inline double max_matched_gap(const std::vector<ParticleRecord>& a, const std::vector<ParticleRecord>& b,
                              const AABB& global) {
  if (a.size() != b.size()) return INFINITY;
  std::vector<bool> used(b.size(), false);
  double gap = 0.0;
  for (const auto& ra : a) {
    double best = INFINITY;
    std::size_t arg = 0;
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (used[k]) continue;
      const double d = length_sq(minimum_image(ra.position - b[k].position, global));
      if (d < best) {
        best = d;
        arg = k;
      }
    }
    used[arg] = true;
    const Vec3 d = minimum_image(ra.position - b[arg].position, global);
    gap = std::max({gap, std::abs(d.x), std::abs(d.y), std::abs(d.z)});
  }
  return gap;
}

}  // namespace testing_support

namespace testing_support {

/// Gap between two sorted states; falls back to nearest matching when sort
/// order differs (near-ties or wrap-around at the box edge).
inline double state_gap(const std::vector<ParticleRecord>& a, const std::vector<ParticleRecord>& b,
                        const AABB& global) {
  const double sorted = max_position_gap(a, b, global);
  if (sorted < 1e-6) return sorted;
  return std::min(sorted, max_matched_gap(a, b, global));
}

}  // namespace testing_support
