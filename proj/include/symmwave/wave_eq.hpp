#pragma once

#include <optional>
#include <string>

#include "symmwave/branch.hpp"

namespace symmwave {

enum class Family { A, B };
const char* family_name(Family f);
std::optional<Family> family_from_name(const std::string& s);

// u_tt = g(r,u,u_r) u_rr + f(r,u,u_r) for one of the two families, with a
// branch substituted into g and f. Immutable; shared freely.
struct WaveEq {
  Family family = Family::A;
  ConditionBranch branch;
  Expr g, f;
};

// family admissibility inequality (nonlinear + hyperbolic + multi-dimensional)
ParamScalar admissibility(Family f);

// InadmissibleEquation if the admissibility product vanishes identically on
// the branch
WaveEq make_wave_eq(Family f, const ConditionBranch& br);
WaveEq make_wave_eq(Family f, const ParamPoint& pt);

ConditionBranch point_branch(const ParamPoint& pt);
std::string point_str(const ParamPoint& pt);

// antiderivative of u^p (power form or ln u for p = -1 on the branch)
Expr H_of_u(const ConditionBranch& br);
// antiderivative of u_r^(p+1) (power form or ln u_r for p = -2)
Expr h_of_ur(const ConditionBranch& br);
// flux of the alternative family-B divergence structure at c = 0
Expr alt_flux_B(const ConditionBranch& br);
ParamScalar radial_weight_m();  // b(n-1)(p+1)/(a+b)

struct StructureReport {
  bool hyperbolic = false;
  enum class Linearity { kQuasilinear, kSemilinear } linearity = Linearity::kQuasilinear;
  bool variational = false;
  bool divergence = false;
  std::optional<Expr> lagrangian;
  std::optional<ParamScalar> lagrangian_weight;  // exponent w in r^w
  std::optional<Expr> flux;
  std::optional<ParamScalar> flux_weight;
  std::optional<ParamScalar> m;  // family B alternative weight
  bool alternative_structure = false;
  bool structures_coincide = false;  // family B: c=0 and a=pb, so m = n-1
};

// Structural classification at a rational parameter point.
StructureReport detect_structures(Family f, const ParamPoint& pt);

}  // namespace symmwave
