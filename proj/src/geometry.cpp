#include "bellvol/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace bellvol {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// splitmix64 output function. The stream value at position `counter` is
// the finalizer applied to seed + (counter+1)*gamma, which is a pure
// function of (seed, counter) with full avalanche.
std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t counter) {
  std::uint64_t x = seed + (counter + 1) * 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

double dot(const Direction& u, const Direction& v) {
  return u.x * v.x + u.y * v.y + u.z * v.z;
}

double norm(const Direction& u) { return std::sqrt(dot(u, u)); }

double angle_between(const Direction& u, const Direction& v) {
  const double d = std::clamp(dot(u, v), -1.0, 1.0);
  return std::acos(d);
}

double stream_uniform(std::uint64_t seed, std::uint64_t counter) {
  // 53 high bits -> double in [0, 1)
  return static_cast<double>(splitmix64_at(seed, counter) >> 11) * 0x1.0p-53;
}

Direction sample_direction(RandomStream& stream) {
  // One direction = two scalar draws at counters 2i and 2i+1.
  const std::uint64_t i = stream.index++;
  const double u = 2.0 * stream_uniform(stream.seed, 2 * i) - 1.0;  // cos(theta)
  const double phi = kTwoPi * stream_uniform(stream.seed, 2 * i + 1);
  const double s = std::sqrt(std::max(0.0, 1.0 - u * u));
  return Direction{s * std::cos(phi), s * std::sin(phi), u};
}

ChshConfig sample_chsh_config(RandomStream& stream) {
  ChshConfig c;
  c.a = Direction{0.0, 0.0, 1.0};
  c.b = sample_direction(stream);
  c.aP = sample_direction(stream);
  c.bP = sample_direction(stream);
  return c;
}

I3322Config sample_i3322_config(RandomStream& stream) {
  I3322Config c;
  c.a = Direction{0.0, 0.0, 1.0};
  c.aP = sample_direction(stream);
  c.aPP = sample_direction(stream);
  c.b = sample_direction(stream);
  c.bP = sample_direction(stream);
  c.bPP = sample_direction(stream);
  return c;
}

namespace {
Direction in_plane(double alpha) {
  return Direction{std::sin(alpha), 0.0, std::cos(alpha)};
}
}  // namespace

ChshConfig coplanar_chsh_config(double alpha_a, double alpha_b, double alpha_aP,
                                double alpha_bP) {
  return ChshConfig{in_plane(alpha_a), in_plane(alpha_b), in_plane(alpha_aP),
                    in_plane(alpha_bP)};
}

}  // namespace bellvol
