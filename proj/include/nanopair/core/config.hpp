#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "nanopair/core/aabb.hpp"

namespace nanopair {

enum class PotentialKind { LennardJones, SpringDashpot };
enum class LayoutKind { AoS, SoA, AoSoA };
enum class FillKind { Full, DiagonalHalf };
enum class CurveKind { Morton, Hilbert };

struct LayoutChoice {
  LayoutKind kind = LayoutKind::AoS;
  int cluster_size = 8;  // AoSoA only

  friend bool operator==(const LayoutChoice&, const LayoutChoice&) = default;
};

/// Physical and numerical parameters of one run, in LJ reduced units.
struct SimConfig {
  std::array<int, 3> unit_cells{32, 32, 32};
  int particles_per_cell = 4;
  double lattice_density = 0.8442;
  double dt = 0.005;
  int steps = 100;
  double cutoff = 2.5;
  double verlet_buffer = 0.3;
  int reneigh_interval = 20;

  PotentialKind potential = PotentialKind::LennardJones;
  double epsilon = 1.0;
  double sigma = 1.0;
  double stiffness = 0.0;
  double damping = 0.0;
  double diameter = 1.0;

  bool half_neighbor = false;
  LayoutChoice layout{};
  double mass = 1.0;
  std::uint64_t rng_seed = 12345;
  // Initial velocities are uniform in [-scale/2, scale/2) per component.
  double velocity_scale = 1.0;
  FillKind fill = FillKind::Full;

  /// Interaction radius used for neighbor lists and ghost layers.
  double interaction_radius() const { return cutoff + verlet_buffer; }

  /// Throws ConfigError naming the first invalid field.
  void validate() const;

  friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

double lattice_constant(const SimConfig& cfg);
AABB global_domain(const SimConfig& cfg);

struct BalanceOptions {
  std::optional<CurveKind> curve;  // empty: no balancing
  double refine_threshold = 800.0;
  double merge_threshold = 100.0;
  int max_depth = 4;

  void validate() const;
  friend bool operator==(const BalanceOptions&, const BalanceOptions&) = default;
};

/// Everything beyond the physics: rank layout, balancing and output.
struct RunOptions {
  int ranks = 1;
  std::optional<std::array<int, 3>> rank_grid;
  bool ranks_sequential = false;
  BalanceOptions balance{};
  std::string dump_path;
  int dump_every = 0;
  std::string report_path;

  void validate() const;
  friend bool operator==(const RunOptions&, const RunOptions&) = default;
};

/// Factor `ranks` into a 3D grid minimizing subdomain surface for `global`.
std::array<int, 3> choose_rank_grid(int ranks, const AABB& global);

std::string to_string(PotentialKind k);
std::string to_string(const LayoutChoice& l);
std::string to_string(CurveKind k);
std::string to_string(FillKind k);

}  // namespace nanopair
