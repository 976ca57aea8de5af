#pragma once

// Extension, averaging and differential operators on the shell.

#include "thinshell/fields.hpp"

namespace thinshell {

// eta(pi(x)); constant in the normal direction.
VField constant_extension(SField eta);

// d/dn f = nbar . grad f
J31 normal_derivative(const PointCtx& p, const JV& f);

// Average in the normal direction, (1 / (eps g)) int f(y + r n) dr, with the
// shell's radial rule. Exact derivatives in the chart variables.
V3<JS> average(const VolumeField& f, const Column& c);
// P M u
V3<JS> average_tangential(const VolumeField& u, const Column& c);
// M(B grad phi) + M((d/dn phi) psi) with B = (I - d W)P.
V3d average_gradient(const VolumeField& phi, const Column& c);

// Surface field y -> M f (y); only evaluable on shell columns.
SField average_field(VField f, bool tangential = false);

// E v = vbar + (vbar . Psi) nbar for a tangential surface field v.
VField impermeable_extension(SField v);
V3<JV> impermeable_extension_at(const PointCtx& p, const V3<JS>& v);

// u^a = E M_tau u and u^r = u - u^a.
struct Decomposition {
  VField ua, ur;
};
Decomposition decompose(VField u);

// Boundary-interpolated Weingarten map W_eps^i = -(I - n n) grad nbar_eps^i, lifted.
M3<J31> weingarten_lift(const PointCtx& p, int i);

// G(u) = 2 n1 x (W u) + n2 x u with radially interpolated normals and
// Weingarten maps; n2 carries the friction-to-viscosity ratios.
VField g_vector(VField u);

V3<J31> curl(const PointCtx& p, const V3<JV>& u);
J31 div(const PointCtx& p, const V3<JV>& u);
M3<J31> strain_rate(const PointCtx& p, const V3<JV>& u);

}  // namespace thinshell
