#pragma once

#include "nanopair/exec/backend.hpp"
#include "nanopair/neighbor/verlet.hpp"
#include "nanopair/potential/force_laws.hpp"

namespace nanopair {

/// Generic particle-neighbor kernel: forces(i) = sum over listed j with
/// rsq < rsq_cutoff of law(x_i - x_j, rsq, v_i, v_j). In half mode the
/// increment is also subtracted from j; ghost forces are scratch and never
/// communicated back. Accumulation order is particle-major, list order.
template <bool Half, class Backend, ArrayLayout L, ArrayLayout NbL, class Law>
void compute_forces(const Backend& backend, ParticleStore<L>& store,
                    const NeighborLists<NbL>& lists, const Law& law, double cutoff) {
  static_assert(!(Half && Backend::parallel) || L::atomic,
                "parallel half-neighbor forces need an atomic force layout");
  const double rsq_cutoff = cutoff * cutoff;
  const int n_local = store.n_local();
  store.zero_forces();
  auto particle = make_particle(store);

  backend.loop_1d(n_local, [&](int i) {
    const Vec3 pos_i = particle.get_position(i);
    const Vec3 vel_i = Law::needs_velocity ? particle.get_velocity(i) : Vec3{};
    Vec3 f_i{};
    lists.for_each_neighbor(i, [&](int j) {
      const Vec3 del = pos_i - particle.get_position(j);
      const double rsq = length_sq(del);
      if (rsq < rsq_cutoff) {
        if (rsq == 0.0) throw SingularityError(i, j, "coincident particles");
        const Vec3 vel_j = Law::needs_velocity ? particle.get_velocity(j) : Vec3{};
        const Vec3 f = law(del, rsq, vel_i, vel_j);
        f_i += f;
        if constexpr (Half) particle.add_force(j, -f);
      }
    });
    if constexpr (Half)
      particle.add_force(i, f_i);
    else
      particle.set_force(i, f_i);
  });
}

template <class Backend, ArrayLayout L, ArrayLayout NbL, class Law>
void compute_forces(const Backend& backend, ParticleStore<L>& store,
                    const NeighborLists<NbL>& lists, const Law& law, double cutoff) {
  if (lists.half())
    compute_forces<true>(backend, store, lists, law, cutoff);
  else
    compute_forces<false>(backend, store, lists, law, cutoff);
}

/// Potential energy attributed to this store's locals. Diagnostic only: used by
/// tests to check forces against finite differences of the energy.
template <ArrayLayout L, ArrayLayout NbL, class Law>
double potential_energy(const ParticleStore<L>& store, const NeighborLists<NbL>& lists,
                        const Law& law, double cutoff) {
  const double rsq_cutoff = cutoff * cutoff;
  const int n_local = store.n_local();
  double e = 0.0;
  for (int i = 0; i < n_local; ++i) {
    const Vec3 pos_i = store.position(i);
    lists.for_each_neighbor(i, [&](int j) {
      const double rsq = length_sq(pos_i - store.position(j));
      if (rsq >= rsq_cutoff) return;
      // Half lists hold local pairs once and ghost pairs at both ends.
      const double w = (lists.half() && j < n_local) ? 1.0 : 0.5;
      e += w * law.energy(rsq);
    });
  }
  return e;
}

}  // namespace nanopair
