#pragma once

#include <cstdint>

namespace bellvol {

/// Unit vector on the 2-sphere (a measurement axis). Components must
/// satisfy x^2+y^2+z^2 = 1 within 1e-9.
struct Direction {
  double x = 0.0;
  double y = 0.0;
  double z = 1.0;
};

double dot(const Direction& u, const Direction& v);
double norm(const Direction& u);

/// Angle between two unit vectors, in [0, pi]. The dot product is
/// clamped to [-1, 1] before acos so rounding overshoot never produces NaN.
double angle_between(const Direction& u, const Direction& v);

/// Counter-based random stream: the i-th draw is a pure function of
/// (seed, i). No mutable generator state is shared between workers;
/// advancing index by k skips exactly k direction draws.
struct RandomStream {
  std::uint64_t seed = 0;
  std::uint64_t index = 0;
};

/// Uniform double in [0, 1) derived from (seed, counter) via a splitmix64
/// step. Stateless; counter is in units of scalar uniform draws.
double stream_uniform(std::uint64_t seed, std::uint64_t counter);

/// Uniform direction on the sphere via u = cos(theta) ~ U[-1,1] and
/// phi ~ U[0, 2pi). Consumes exactly one stream index (two scalar draws).
Direction sample_direction(RandomStream& stream);

struct ChshConfig {
  Direction a, b, aP, bP;
};

struct I3322Config {
  Direction a, aP, aPP, b, bP, bPP;
};

/// a is pinned to z (spherical symmetry lets one direction be fixed);
/// b, a', b' are independent uniform draws. Consumes 3 stream indices.
ChshConfig sample_chsh_config(RandomStream& stream);

/// a pinned to z, the other five directions uniform. Consumes 5 indices.
I3322Config sample_i3322_config(RandomStream& stream);

/// In-plane configuration: each direction is (sin alpha, 0, cos alpha),
/// so pairwise angles are differences of the polar angles folded into [0, pi].
ChshConfig coplanar_chsh_config(double alpha_a, double alpha_b, double alpha_aP,
                                double alpha_bP);

}  // namespace bellvol
