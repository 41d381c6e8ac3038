#include "nanopair/cli/runner.hpp"

#include <chrono>

#include "nanopair/cli/xyz.hpp"
#include "nanopair/comm/transport.hpp"
#include "nanopair/driver/simulation.hpp"

namespace nanopair {

namespace {

std::vector<long long> to_counts(const std::vector<double>& v) {
  std::vector<long long> out;
  for (double x : v) out.push_back(std::llround(x));
  return out;
}

template <ArrayLayout L, class Backend>
void run_rank(const InputDeck& deck, Transport& transport, int rank, const std::array<int, 3>& dims,
              SimReport& report) {
  const SimConfig& cfg = deck.sim;
  const RunOptions& opts = deck.run;
  RankWorld world(transport, rank, global_domain(cfg));
  Simulation<L, Backend> sim(world, cfg, dims);
  sim.setup();

  const auto before = sim.rank_counts();
  BalanceReport bal;
  if (opts.balance.curve) bal = sim.balance(opts.balance);
  const auto after = sim.rank_counts();
  const Vec3 p0 = sim.global_momentum();

  int frames = 0;
  const bool dumping = !opts.dump_path.empty();
  auto dump = [&](bool first) {
    const auto state = sim.global_state();
    if (rank == 0) {
      std::vector<Vec3> pos;
      pos.reserve(state.size());
      for (const auto& rec : state) pos.push_back(rec.position);
      dump_xyz(opts.dump_path, pos, sim.step(), first);
    }
    ++frames;
  };
  if (dumping) dump(true);

  sim.reset_timers();
  const auto start = std::chrono::steady_clock::now();
  for (int s = 1; s <= cfg.steps; ++s) {
    sim.advance();
    if (dumping && opts.dump_every > 0 && s % opts.dump_every == 0) dump(false);
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (dumping && opts.dump_every == 0 && cfg.steps > 0) dump(false);

  const Vec3 p1 = sim.global_momentum();
  const double t_force = world.allreduce_max(sim.timers().seconds(Phase::Force));
  const double t_neigh = world.allreduce_max(sim.timers().seconds(Phase::Neigh));
  const double t_comm = world.allreduce_max(sim.timers().seconds(Phase::Comm));
  const double t_other = world.allreduce_max(sim.timers().seconds(Phase::Other));
  const double t_wall = world.allreduce_max(wall);
  const double max_disp = world.allreduce_max(sim.max_displacement_seen());
  const double migrated = world.allreduce_sum(static_cast<double>(bal.migration.sent));

  if (rank != 0) return;
  report.rank_grid = dims;
  report.particles = sim.global_count();
  report.steps = cfg.steps;
  report.epochs = sim.epochs();
  report.counts_before = to_counts(before);
  report.counts_after = to_counts(after);
  if (opts.balance.curve) {
    report.imbalance_before = bal.imbalance_before;
    report.imbalance_after = bal.imbalance_after;
    report.leaves = bal.leaves;
  }
  report.migrated = static_cast<int>(std::llround(migrated));
  report.momentum_initial = p0;
  report.momentum_final = p1;
  report.time_force = cfg.steps > 0 ? t_force : 0.0;
  report.time_neigh = cfg.steps > 0 ? t_neigh : 0.0;
  report.time_comm = cfg.steps > 0 ? t_comm : 0.0;
  report.time_other = cfg.steps > 0 ? t_other : 0.0;
  report.wall_time = cfg.steps > 0 ? t_wall : 0.0;
  report.max_displacement = max_disp;
  report.frames = frames;
}

template <ArrayLayout L>
void dispatch_backend(const InputDeck& deck, Transport& transport, int rank,
                      const std::array<int, 3>& dims, SimReport& report) {
  if (ThreadedBackend::default_threads() > 1)
    run_rank<layout::rebind_atomic<L, true>, ThreadedBackend>(deck, transport, rank, dims, report);
  else
    run_rank<L, SerialBackend>(deck, transport, rank, dims, report);
}

void dispatch_layout(const InputDeck& deck, Transport& transport, int rank,
                     const std::array<int, 3>& dims, SimReport& report) {
  const LayoutChoice& l = deck.sim.layout;
  switch (l.kind) {
    case LayoutKind::AoS:
      return dispatch_backend<layout::RowMajor<>>(deck, transport, rank, dims, report);
    case LayoutKind::SoA:
      return dispatch_backend<layout::ColumnMajor<>>(deck, transport, rank, dims, report);
    case LayoutKind::AoSoA:
      switch (l.cluster_size) {
        case 4: return dispatch_backend<layout::Clustered<4>>(deck, transport, rank, dims, report);
        case 8: return dispatch_backend<layout::Clustered<8>>(deck, transport, rank, dims, report);
        case 16: return dispatch_backend<layout::Clustered<16>>(deck, transport, rank, dims, report);
        default: throw ConfigError("layout", "supported AoSoA cluster sizes are 4, 8 and 16");
      }
  }
}

}  // namespace

SimReport run_command(const InputDeck& deck) {
  deck.validate();
  SimReport report;
  report.deck = deck;
  const AABB global = global_domain(deck.sim);
  const std::array<int, 3> dims = deck.run.rank_grid.value_or(choose_rank_grid(deck.run.ranks, global));
  Transport transport(deck.run.ranks, deck.run.ranks_sequential);
  run_ranks(transport, [&](int rank) { dispatch_layout(deck, transport, rank, dims, report); });
  return report;
}

}  // namespace nanopair
