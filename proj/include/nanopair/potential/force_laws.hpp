#pragma once

#include <cmath>

#include "nanopair/core/errors.hpp"
#include "nanopair/core/vec3.hpp"

namespace nanopair {

/// Lennard-Jones pair force on i from j, given del = x_i - x_j and rsq = |del|^2:
/// 48 eps sr6 (sr6 - 1/2) del / rsq with sr6 = sigma^6 / rsq^3.
inline Vec3 lj_force(const Vec3& del, double rsq, double epsilon, double sigma) {
  if (!(rsq > 0.0)) throw SingularityError(-1, -1, "Lennard-Jones force at zero separation");
  const double sigma2 = sigma * sigma;
  const double sigma6 = sigma2 * sigma2 * sigma2;
  // One division for sr6 keeps it exactly 1/2 at the minimum (sigma a power of two).
  const double sr6 = sigma6 / (rsq * rsq * rsq);
  const double f = 48.0 * sr6 * (sr6 - 0.5) / rsq * epsilon;
  return f * del;
}

/// Linear spring-dashpot contact force between spheres of the given diameter:
/// K xi + gamma xi_dot, both zero when the spheres do not overlap.
inline Vec3 spring_dashpot_force(const Vec3& del, double rsq, const Vec3& v_i, const Vec3& v_j,
                                 double stiffness, double damping, double diameter) {
  if (!(rsq > 0.0))
    throw SingularityError(-1, -1, "spring-dashpot force at zero separation (unit vector undefined)");
  const double r = std::sqrt(rsq);
  if (r >= diameter) return {};
  const Vec3 n = (1.0 / r) * del;
  const Vec3 xi = (diameter - r) * n;
  const Vec3 xi_dot = -dot(n, v_i - v_j) * n;
  return stiffness * xi + damping * xi_dot;
}

// Force-law objects handed to compute_forces. `needs_velocity` tells the halo
// code whether ghosts must carry velocities.

struct LennardJones {
  static constexpr bool needs_velocity = false;

  double epsilon = 1.0;
  double sigma = 1.0;

  LennardJones(double eps, double sig) : epsilon(eps), sigma(sig) {
    const double s2 = sig * sig;
    sigma6_ = s2 * s2 * s2;
  }

  Vec3 operator()(const Vec3& del, double rsq, const Vec3&, const Vec3&) const noexcept {
    const double sr6 = sigma6_ / (rsq * rsq * rsq);
    const double f = 48.0 * sr6 * (sr6 - 0.5) / rsq * epsilon;
    return f * del;
  }

  double energy(double rsq) const noexcept {
    const double sr2 = 1.0 / rsq;
    const double sr6 = sr2 * sr2 * sr2 * sigma6_;
    return 4.0 * epsilon * sr6 * (sr6 - 1.0);
  }

 private:
  double sigma6_ = 1.0;
};

struct SpringDashpot {
  static constexpr bool needs_velocity = true;

  double stiffness = 0.0;
  double damping = 0.0;
  double diameter = 1.0;

  Vec3 operator()(const Vec3& del, double rsq, const Vec3& v_i, const Vec3& v_j) const {
    return spring_dashpot_force(del, rsq, v_i, v_j, stiffness, damping, diameter);
  }

  // Elastic part only; the dashpot is dissipative.
  double energy(double rsq) const noexcept {
    const double overlap = diameter - std::sqrt(rsq);
    return overlap > 0.0 ? 0.5 * stiffness * overlap * overlap : 0.0;
  }
};

}  // namespace nanopair
