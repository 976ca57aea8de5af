#pragma once

// Deterministic test-field generators with constraint tags.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "thinshell/fields.hpp"

namespace thinshell {

enum Tag : unsigned {
  kScalar = 1u << 0,
  kVector = 1u << 1,
  kSurface = 1u << 2,       // defined on the surface
  kTangential = 1u << 3,    // tangential to the surface
  kImpermeable = 1u << 4,   // u . n_eps = 0 on both boundary pieces
  kDivFree = 1u << 5,
  kSlip = 1u << 6,          // Navier slip with the shell's friction coefficients
  kOrthogonal = 1u << 7,    // orthogonal to the rigid rotations
};

std::string tags_string(unsigned tags);

struct FamilyInfo {
  std::string name;
  unsigned tags;
};

// All families known to make_family.
const std::vector<FamilyInfo>& family_catalog();
const FamilyInfo& family_info(const std::string& name);

// Deterministic uniform numbers in [0, 1) from (seed, family, member).
class ParamStream {
 public:
  ParamStream(std::uint64_t seed, const std::string& family, int member);
  double uniform();
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  V3d vec(double a, double b);

 private:
  std::mt19937_64 rng_;
};

// Surface members: tangential_harmonics (scalar or vector), killing_sphere.
SField surface_member(const std::string& family, const Surface& S, int member, std::uint64_t seed);

// Volume members for a given shell context. Slip families need a sphere with
// constant thickness functions (rigid_rotation also accepts a torus with
// axisymmetric thickness functions).
VField volume_member(const std::string& family, const ShellContext& ctx, int member, std::uint64_t seed);

// Max violation of the family's tags on the context, relative to the field scale.
double tag_violation(const ShellContext& ctx, const VolumeField& u, unsigned tags);

// Individual generators.
SField tangential_scalar(int member, std::uint64_t seed);
SField tangential_vector(int member, std::uint64_t seed);
SField killing_vector(const Surface& S, int member, std::uint64_t seed);
VField unconstrained_scalar(int member, std::uint64_t seed);
VField unconstrained_vector(int member, std::uint64_t seed);
VField impermeable_generic(int member, std::uint64_t seed);
VField divfree_impermeable(int member, std::uint64_t seed);
VField slip_shell(const ShellContext& ctx, int member, std::uint64_t seed, bool orthogonal);
VField rigid_rotation(const ShellContext& ctx, int member, std::uint64_t seed);

// Radial profile of the slip family: f(t) = alpha + beta t + c2 t^2 + c3 t^3,
// t = |x| - R0.
struct SlipProfile {
  double alpha, beta, c2, c3, R0, L;
  double f(double t) const { return alpha + t * (beta + t * (c2 + t * c3)); }
  double df(double t) const { return beta + t * (2.0 * c2 + 3.0 * t * c3); }
};
SlipProfile slip_profile(double R0, double L, double gamma0, double gamma1, double nu, double kappa, bool orthogonal);

}  // namespace thinshell
