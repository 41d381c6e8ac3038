#include "nanopair/particles/lattice.hpp"

#include <random>
#include <span>

namespace nanopair {

namespace {

std::span<const Vec3> basis(int particles_per_cell) {
  static constexpr Vec3 sc[] = {{0.0, 0.0, 0.0}};
  static constexpr Vec3 bcc[] = {{0.0, 0.0, 0.0}, {0.5, 0.5, 0.5}};
  static constexpr Vec3 fcc[] = {
      {0.0, 0.0, 0.0}, {0.5, 0.5, 0.0}, {0.5, 0.0, 0.5}, {0.0, 0.5, 0.5}};
  switch (particles_per_cell) {
    case 1: return sc;
    case 2: return bcc;
    default: return fcc;
  }
}

bool keep(const SimConfig& cfg, const AABB& global, const Vec3& p) {
  if (cfg.fill == FillKind::Full) return true;
  const Vec3 e = global.extent();
  return (p.x - global.min.x) / e.x + (p.y - global.min.y) / e.y + (p.z - global.min.z) / e.z <
         1.5;
}

}  // namespace

std::vector<ParticleRecord> lattice_records(const SimConfig& cfg) {
  cfg.validate();
  const double a = lattice_constant(cfg);
  const AABB global = global_domain(cfg);
  const auto cell_basis = basis(cfg.particles_per_cell);

  std::mt19937_64 rng(cfg.rng_seed);
  std::uniform_real_distribution<double> uniform(-0.5, 0.5);

  std::vector<ParticleRecord> out;
  out.reserve(static_cast<std::size_t>(cfg.unit_cells[0]) * cfg.unit_cells[1] *
              cfg.unit_cells[2] * cell_basis.size());
  for (int k = 0; k < cfg.unit_cells[2]; ++k)
    for (int j = 0; j < cfg.unit_cells[1]; ++j)
      for (int i = 0; i < cfg.unit_cells[0]; ++i)
        for (const Vec3& b : cell_basis) {
          const Vec3 p{(i + b.x) * a, (j + b.y) * a, (k + b.z) * a};
          Vec3 v{uniform(rng), uniform(rng), uniform(rng)};
          v *= cfg.velocity_scale;
          if (keep(cfg, global, p)) out.push_back({p, v});
        }

  if (!out.empty()) {
    Vec3 mean{};
    for (const auto& r : out) mean += r.velocity;
    mean *= 1.0 / static_cast<double>(out.size());
    for (auto& r : out) r.velocity -= mean;
  }
  return out;
}

}  // namespace nanopair
