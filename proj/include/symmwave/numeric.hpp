#pragma once

#include <functional>
#include <vector>

#include "symmwave/db.hpp"

namespace symmwave {

struct Grid {
  double r0 = 1.0, R = 9.0;
  int nr = 400;       // cells (nr + 1 points)
  double t_end = 2.0;
  double cfl = 0.5;   // dt = cfl * dr / max sqrt(g) over the initial data
  double dt_override = 0.0;
  int save_every = 8;  // snapshot cadence in steps
  double dr() const { return (R - r0) / nr; }
};

struct EqPoint {
  Family family = Family::A;
  ParamPoint params;
  double pa() const { return params[0].get_d(); }
  double pb() const { return params[1].get_d(); }
  double pc() const { return params[2].get_d(); }
  double pp() const { return params[3].get_d(); }
  double pn() const { return params[4].get_d(); }
  double g(double r, double u, double ur) const;
  double f(double r, double u, double ur) const;
};

using Profile = std::function<double(double)>;             // r -> value
using SpaceTime = std::function<double(double, double)>;   // (t, r) -> value

struct Trajectory {
  EqPoint eq;
  Grid grid;
  double dt = 0;
  std::vector<double> rs;
  std::vector<double> times;
  std::vector<std::vector<double>> u, ut;  // snapshots
  enum class Status { kOk, kBlowUp, kHyperbolicityLoss } status = Status::kOk;
  std::string flag_note;  // set when a run terminated early
};

struct SolveOptions {
  SpaceTime forcing;         // optional manufactured forcing
  SpaceTime boundary_left;   // optional Dirichlet data (default: frozen initial values)
  SpaceTime boundary_right;
  double overflow_guard = 1e8;
};

// Second-order centered-in-space, leapfrog-in-time integration of
// u_tt = g u_rr + f (+ forcing). Boundary values held fixed unless Dirichlet
// data is supplied. Errors: CFLViolation for a bad dt_override,
// HyperbolicityLoss when g <= 0 on the initial data; mid-run blow-up or
// hyperbolicity loss terminates with a flagged trajectory.
Trajectory solve_radial(const EqPoint& eq, const Profile& u0, const Profile& v0,
                        const Grid& grid, const SolveOptions& opts = {});

// expression compiled against a fixed parameter point for fast grid evaluation
class CompiledExpr {
 public:
  CompiledExpr() = default;
  CompiledExpr(const Expr& e, const ParamPoint& pt);
  double eval(double t, double r, double u, double ut, double ur) const;

 private:
  struct CFactor {
    int slot;  // 0 t, 1 r, 2 u, 3 u_t, 4 u_r
    double exp;
    bool log = false;
  };
  struct CTerm {
    double coeff;
    std::vector<CFactor> factors;
  };
  std::vector<CTerm> terms_;
};

struct MonitorSeries {
  std::vector<double> times, C, drift, X_left, X_right;
  double max_drift = 0, max_rel_drift = 0;
};

// composite trapezoid quadrature of T per snapshot plus boundary fluxes;
// u_r by centered differences (one-sided second order at the ends)
MonitorSeries monitor(const Trajectory& traj, const Expr& T, const Expr& X);

// C(t) = integral of u r^w dr, for the kinematic quantity checks
MonitorSeries kinematic_quantity(const Trajectory& traj, double weight);

// least-squares residual of a linear fit C(t) ~ C1 t + C2, relative to scale
double linear_fit_residual(const MonitorSeries& s);

// discrete d/dt C + (X(R) - X(r0)) integrated over the run (flux balance)
double flux_balance_defect(const MonitorSeries& s);

struct ForcingReport {
  std::vector<double> times, lhs, rhs;
  double max_abs_discrepancy = 0, scale = 0;
  double rel_discrepancy() const { return scale > 0 ? max_abs_discrepancy / scale : 0; }
};

// compares d^2/dt^2 of C(t) = integral u r dr against nu N + S (with the
// boundary flux bookkeeping of the two-dimensional form of the equations)
ForcingReport forcing_check(const Trajectory& traj);

// width of [lo, hi] band convergence order measured on a grid pair
double convergence_order(double coarse_err, double fine_err);

}  // namespace symmwave
