#pragma once

#include <array>
#include <chrono>
#include <string_view>

namespace nanopair {

enum class Phase { Force = 0, Neigh = 1, Comm = 2, Other = 3 };

inline std::string_view phase_name(Phase p) {
  constexpr std::array<std::string_view, 4> names{"force", "neigh", "comm", "other"};
  return names[static_cast<int>(p)];
}

/// Accumulated wall time per phase, in seconds.
class PhaseTimers {
 public:
  using clock = std::chrono::steady_clock;

  class Scope {
   public:
    Scope(PhaseTimers& t, Phase p) : timers_(&t), phase_(p), start_(clock::now()) {}
    ~Scope() { timers_->add(phase_, std::chrono::duration<double>(clock::now() - start_).count()); }
    Scope(const Scope&) = delete;
    Scope& operator=(const Scope&) = delete;

   private:
    PhaseTimers* timers_;
    Phase phase_;
    clock::time_point start_;
  };

  Scope scope(Phase p) { return Scope(*this, p); }
  void add(Phase p, double seconds) { seconds_[static_cast<int>(p)] += seconds; }
  double seconds(Phase p) const { return seconds_[static_cast<int>(p)]; }

 private:
  std::array<double, 4> seconds_{};
};

}  // namespace nanopair
