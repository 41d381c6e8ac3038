#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "nanopair/balance/forest.hpp"
#include "nanopair/balance/migrate.hpp"
#include "nanopair/balance/partition.hpp"
#include "nanopair/balance/rank_domain.hpp"
#include "nanopair/comm/halo.hpp"
#include "nanopair/comm/pattern.hpp"
#include "nanopair/comm/rank_world.hpp"
#include "nanopair/core/config.hpp"
#include "nanopair/core/errors.hpp"
#include "nanopair/core/periodic.hpp"
#include "nanopair/driver/integrate.hpp"
#include "nanopair/driver/timers.hpp"
#include "nanopair/exec/backend.hpp"
#include "nanopair/neighbor/cell_grid.hpp"
#include "nanopair/neighbor/verlet.hpp"
#include "nanopair/particles/lattice.hpp"
#include "nanopair/potential/compute.hpp"

namespace nanopair {

using ForceLaw = std::variant<LennardJones, SpringDashpot>;

inline ForceLaw make_force_law(const SimConfig& cfg) {
  if (cfg.potential == PotentialKind::LennardJones) return LennardJones(cfg.epsilon, cfg.sigma);
  return SpringDashpot{cfg.stiffness, cfg.damping, cfg.diameter};
}

struct BalanceReport {
  double imbalance_before = 1.0;
  double imbalance_after = 1.0;
  int leaves = 0;
  int passes = 0;
  MigrationStats migration;
};

/// Locals of every rank, positions wrapped into the global box, sorted.
/// Returned on every rank. Collective.
template <ArrayLayout L>
std::vector<ParticleRecord> gather_global_state(RankWorld& world, const ParticleStore<L>& store) {
  std::vector<double> mine;
  mine.reserve(6 * static_cast<std::size_t>(store.n_local()));
  for (int i = 0; i < store.n_local(); ++i) {
    const Vec3 p = pbc_correct(store.position(i), world.global());
    const Vec3 v = store.velocity(i);
    mine.insert(mine.end(), {p.x, p.y, p.z, v.x, v.y, v.z});
  }
  const std::uint64_t tag = world.next_tag();
  for (int r = 0; r < world.size(); ++r)
    if (r != world.rank()) world.send(r, tag, encode_f64_array(mine));
  std::vector<ParticleRecord> all;
  for (int r = 0; r < world.size(); ++r) {
    const std::vector<double> rows = r == world.rank() ? mine : decode_f64_array(world.recv(r, tag));
    for (std::size_t k = 0; k + 5 < rows.size(); k += 6)
      all.push_back({{rows[k], rows[k + 1], rows[k + 2]}, {rows[k + 3], rows[k + 4], rows[k + 5]}});
  }
  std::sort(all.begin(), all.end());
  return all;
}

/// One rank's share of a run: particle store, communication pattern, neighbor
/// lists and the velocity Verlet loop. All public operations except the
/// accessors are collective over the world's ranks.
template <ArrayLayout L, class Backend = SerialBackend>
class Simulation {
 public:
  Simulation(RankWorld& world, const SimConfig& cfg, const std::array<int, 3>& rank_dims,
             Backend backend = Backend{})
      : world_(&world),
        cfg_(cfg),
        backend_(std::move(backend)),
        law_(make_force_law(cfg)),
        rank_dims_(rank_dims) {
    cfg_.validate();
    if (Backend::parallel && !L::atomic && cfg_.half_neighbor)
      throw ConfigError("half_neighbor", "parallel half lists need an atomic layout");
    pattern_ = six_stencil_pattern(rank_dims_, world.size(), world.rank(), world.global(), spacing());
    store_ = create_lattice<L>(cfg_, RankGrid{rank_dims_}.box(world.rank(), world.global()));
  }

  const SimConfig& config() const noexcept { return cfg_; }
  ParticleStore<L>& store() noexcept { return store_; }
  const ParticleStore<L>& store() const noexcept { return store_; }
  const NeighborLists<>& lists() const noexcept { return lists_; }
  const CellGrid& grid() const noexcept { return *grid_; }
  const CommPattern& pattern() const noexcept { return pattern_; }
  const BorderPlan& border_plan() const noexcept { return plan_; }
  const PhaseTimers& timers() const noexcept { return timers_; }
  RankWorld& world() noexcept { return *world_; }
  int step() const noexcept { return step_; }
  long long global_count() const noexcept { return global_count_; }
  int epochs() const noexcept { return epochs_; }
  double max_displacement_seen() const noexcept { return max_disp_seen_; }
  bool balanced() const noexcept { return domain_.has_value(); }
  const std::optional<RankDomain>& domain() const noexcept { return domain_; }

  double spacing() const noexcept { return cfg_.interaction_radius(); }
  void reset_timers() noexcept { timers_ = PhaseTimers{}; }

  /// Initial exchange, ghosts, lists and forces.
  void setup() {
    global_count_ = static_cast<long long>(std::llround(world_->allreduce_sum(store_.n_local())));
    reneighbor();
    compute();
  }

  void run(int steps) {
    for (int s = 0; s < steps; ++s) advance();
  }

  /// One velocity Verlet step with reneighboring every reneigh_interval steps.
  void advance() {
    {
      auto t = timers_.scope(Phase::Other);
      initial_integrate(backend_, store_, cfg_.dt, cfg_.mass);
    }
    ++step_;
    if (step_ % cfg_.reneigh_interval == 0) {
      reneighbor();
    } else {
      auto t = timers_.scope(Phase::Comm);
      synchronize(*world_, store_, plan_);
    }
    check_guard();
    compute();
    auto t = timers_.scope(Phase::Other);
    final_integrate(backend_, store_, cfg_.dt, cfg_.mass);
  }

  /// Negates every velocity (locals and ghosts).
  void reverse_velocities() {
    for (int i = 0; i < store_.size(); ++i) store_.set_velocity(i, -1.0 * store_.velocity(i));
  }

  Vec3 global_momentum() {
    Vec3 local{};
    for (int i = 0; i < store_.n_local(); ++i) local += cfg_.mass * store_.velocity(i);
    const auto sum = world_->allreduce_sum(std::vector<double>{local.x, local.y, local.z});
    return {sum[0], sum[1], sum[2]};
  }

  std::vector<ParticleRecord> global_state() { return gather_global_state(*world_, store_); }

  /// Per-rank local counts, indexed by rank.
  std::vector<double> rank_counts() { return world_->allgather(store_.n_local()); }

  /// Block-forest balancing: weight, refine/merge, partition along the curve,
  /// migrate whole blocks and switch to the block-neighborhood pattern.
  BalanceReport balance(const BalanceOptions& opts) {
    opts.validate();
    if (!opts.curve) throw ConfigError("balance", "no curve selected");
    BalanceReport report;
    auto t = timers_.scope(Phase::Comm);

    BlockForest forest(world_->global(), *opts.curve, opts.max_depth);
    report.passes = refine_and_merge(forest, opts, [&](BlockForest& f) {
      compute_weights(*world_, f, store_, current_owners(f));
    });
    report.leaves = static_cast<int>(forest.size());

    const std::vector<int> before = current_owners(forest);
    report.imbalance_before = imbalance(rank_weights(forest, before, world_->size()));
    const std::vector<int> after = partition_blocks(forest, world_->size());
    report.imbalance_after = imbalance(rank_weights(forest, after, world_->size()));

    std::optional<std::vector<int>> previous;
    if (previous_forest_ && previous_forest_->boxes() == forest.boxes()) previous = previous_forest_->owners();
    report.migration = migrate_blocks(*world_, forest, store_, previous);

    domain_ = rebuild_rank_domain(forest, world_->rank(), spacing());
    pattern_ = block_neighborhood_pattern(*domain_, world_->global(), spacing());
    previous_forest_ = forest;
    reneighbor();
    compute();
    return report;
  }

 private:
  /// Rank currently owning each leaf: the owner of the region holding its
  /// center (stencil subdomain, or block of the previous balancing).
  std::vector<int> current_owners(const BlockForest& f) const {
    if (!previous_forest_) return grid_owners(f, rank_dims_);
    std::vector<int> owners;
    owners.reserve(f.size());
    for (const Block& b : f.leaves()) {
      const int k = previous_forest_->locate(b.aabb.center());
      owners.push_back(k < 0 ? 0 : previous_forest_->leaves()[k].owner);
    }
    return owners;
  }

  void reneighbor() {
    {
      auto t = timers_.scope(Phase::Comm);
      exchange(*world_, store_, pattern_);
      const long long n = std::llround(world_->allreduce_sum(store_.n_local()));
      if (n != global_count_)
        throw ProtocolError("particle count changed from " + std::to_string(global_count_) + " to " +
                            std::to_string(n) + " at step " + std::to_string(step_));
      if (domain_)
        pattern_.grid_region = crop_grid_region(domain_->union_aabb, particle_bounds(backend_, store_),
                                                spacing(), world_->global());
      plan_ = define_borders(*world_, store_, pattern_, with_velocity());
    }
    auto t = timers_.scope(Phase::Neigh);
    grid_.emplace(build_cell_grid(store_, pattern_.grid_region, spacing()));
    build_neighbor_lists(backend_, store_, *grid_, spacing(), cfg_.half_neighbor, lists_);
    ++epochs_;
  }

  void check_guard() {
    const double d = max_displacement_since_rebuild(backend_, store_, lists_);
    max_disp_seen_ = std::max(max_disp_seen_, d);
    if (!(d < 0.5 * cfg_.verlet_buffer))
      throw GuardViolation("rank " + std::to_string(world_->rank()) + ": displacement " +
                           std::to_string(d) + " at step " + std::to_string(step_) +
                           " reaches half the Verlet buffer");
  }

  bool with_velocity() const {
    return std::visit([](const auto& law) { return std::decay_t<decltype(law)>::needs_velocity; }, law_);
  }

  void compute() {
    auto t = timers_.scope(Phase::Force);
    std::visit(
        [&](const auto& law) {
          if constexpr (!Backend::parallel || L::atomic)
            compute_forces(backend_, store_, lists_, law, cfg_.cutoff);
          else
            compute_forces<false>(backend_, store_, lists_, law, cfg_.cutoff);
        },
        law_);
  }

  RankWorld* world_;
  SimConfig cfg_;
  Backend backend_;
  ForceLaw law_;
  std::array<int, 3> rank_dims_;
  ParticleStore<L> store_;
  CommPattern pattern_;
  BorderPlan plan_;
  std::optional<CellGrid> grid_;
  NeighborLists<> lists_;
  PhaseTimers timers_;
  std::optional<RankDomain> domain_;
  std::optional<BlockForest> previous_forest_;
  long long global_count_ = 0;
  int step_ = 0;
  int epochs_ = 0;
  double max_disp_seen_ = 0.0;
};

}  // namespace nanopair
