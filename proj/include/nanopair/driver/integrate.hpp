#pragma once

#include "nanopair/exec/backend.hpp"
#include "nanopair/particles/store.hpp"

namespace nanopair {

/// Velocity Verlet, first half: v += dt/2 * f/m, then x += dt * v (locals only).
template <class Backend, ArrayLayout L>
void initial_integrate(const Backend& backend, ParticleStore<L>& store, double dt, double mass) {
  const double half_dt_m = 0.5 * dt / mass;
  auto particle = make_particle(store);
  backend.loop_1d(store.n_local(), [&](int i) {
    const Vec3 v = particle.get_velocity(i) + half_dt_m * particle.get_force(i);
    particle.set_velocity(i, v);
    particle.set_position(i, particle.get_position(i) + dt * v);
  });
}

/// Velocity Verlet, second half: v += dt/2 * f/m.
template <class Backend, ArrayLayout L>
void final_integrate(const Backend& backend, ParticleStore<L>& store, double dt, double mass) {
  const double half_dt_m = 0.5 * dt / mass;
  auto particle = make_particle(store);
  backend.loop_1d(store.n_local(), [&](int i) {
    particle.set_velocity(i, particle.get_velocity(i) + half_dt_m * particle.get_force(i));
  });
}

}  // namespace nanopair
