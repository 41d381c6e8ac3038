#include "nanopair/core/config.hpp"

#include <cmath>
#include <limits>

#include "nanopair/core/errors.hpp"

namespace nanopair {

namespace {

void require(bool ok, const char* field, const char* what) {
  if (!ok) throw ConfigError(field, what);
}

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }
bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

}  // namespace

void SimConfig::validate() const {
  require(unit_cells[0] > 0, "nx", "must be a positive integer");
  require(unit_cells[1] > 0, "ny", "must be a positive integer");
  require(unit_cells[2] > 0, "nz", "must be a positive integer");
  require(particles_per_cell == 1 || particles_per_cell == 2 || particles_per_cell == 4,
          "particles_per_cell", "must be 1 (sc), 2 (bcc) or 4 (fcc)");
  require(finite_positive(lattice_density), "density", "must be positive");
  require(finite_nonneg(dt), "dt", "must be a non-negative real");
  require(steps >= 0, "steps", "must be non-negative");
  require(finite_positive(cutoff), "cutoff", "must be positive");
  require(finite_nonneg(verlet_buffer), "buffer", "must be non-negative");
  require(interaction_radius() > 0.0, "buffer", "cutoff + buffer must be positive");
  require(reneigh_interval > 0, "reneigh_every", "must be a positive integer");
  require(finite_positive(epsilon), "epsilon", "must be positive");
  require(finite_positive(sigma), "sigma", "must be positive");
  require(finite_nonneg(stiffness), "stiffness", "must be non-negative");
  require(finite_nonneg(damping), "damping", "must be non-negative");
  require(finite_positive(diameter), "diameter", "must be positive");
  if (potential == PotentialKind::SpringDashpot)
    require(cutoff >= diameter, "cutoff", "must be at least the particle diameter for contacts");
  if (layout.kind == LayoutKind::AoSoA) {
    const int c = layout.cluster_size;
    require(c > 0 && (c & (c - 1)) == 0, "layout", "AoSoA cluster size must be a power of two");
  }
  require(finite_positive(mass), "mass", "must be positive");
  require(finite_nonneg(velocity_scale), "velocity_scale", "must be non-negative");
}

double lattice_constant(const SimConfig& cfg) {
  return std::cbrt(static_cast<double>(cfg.particles_per_cell) / cfg.lattice_density);
}

AABB global_domain(const SimConfig& cfg) {
  const double a = lattice_constant(cfg);
  return {{0.0, 0.0, 0.0},
          {a * cfg.unit_cells[0], a * cfg.unit_cells[1], a * cfg.unit_cells[2]}};
}

void BalanceOptions::validate() const {
  require(finite_positive(refine_threshold), "refine_threshold", "must be positive");
  require(finite_nonneg(merge_threshold), "merge_threshold", "must be non-negative");
  require(merge_threshold < refine_threshold, "merge_threshold",
          "must be smaller than refine_threshold");
  require(max_depth >= 0 && max_depth <= 20, "max_depth", "must lie in [0, 20]");
}

void RunOptions::validate() const {
  require(ranks > 0, "ranks", "must be a positive integer");
  if (rank_grid) {
    const auto& g = *rank_grid;
    require(g[0] > 0 && g[1] > 0 && g[2] > 0, "rank_grid", "dimensions must be positive");
    require(g[0] * g[1] * g[2] == ranks, "rank_grid", "product must equal the rank count");
  }
  require(dump_every >= 0, "dump_every", "must be non-negative");
  balance.validate();
}

std::array<int, 3> choose_rank_grid(int ranks, const AABB& global) {
  const Vec3 e = global.extent();
  std::array<int, 3> best{ranks, 1, 1};
  double best_area = std::numeric_limits<double>::infinity();
  for (int px = ranks; px >= 1; --px) {
    if (ranks % px) continue;
    for (int py = ranks / px; py >= 1; --py) {
      if ((ranks / px) % py) continue;
      const int pz = ranks / px / py;
      const double sx = e.x / px, sy = e.y / py, sz = e.z / pz;
      const double area = sx * sy + sy * sz + sx * sz;
      if (area < best_area - 1e-12 * area) {
        best_area = area;
        best = {px, py, pz};
      }
    }
  }
  return best;
}

std::string to_string(PotentialKind k) {
  return k == PotentialKind::LennardJones ? "lj" : "sd";
}

std::string to_string(const LayoutChoice& l) {
  switch (l.kind) {
    case LayoutKind::AoS: return "aos";
    case LayoutKind::SoA: return "soa";
    case LayoutKind::AoSoA: return "aosoa:" + std::to_string(l.cluster_size);
  }
  return "?";
}

std::string to_string(CurveKind k) { return k == CurveKind::Morton ? "morton" : "hilbert"; }

std::string to_string(FillKind k) { return k == FillKind::Full ? "full" : "diagonal-half"; }

}  // namespace nanopair
