#include "symmwave/numeric.hpp"

#include <cmath>

namespace symmwave {

namespace {

double pow_signed(double x, double e) {
  if (x > 0) return std::pow(x, e);
  double ei = std::round(e);
  if (std::abs(e - ei) < 1e-9) {
    if (x == 0 && ei < 0) return INFINITY;
    return std::pow(x, ei);
  }
  return NAN;  // caller guards
}

}  // namespace

double EqPoint::g(double r, double u, double ur) const {
  (void)r;
  if (family == Family::A) return pc() + pb() * pow_signed(u, pp());
  return pc() + (pa() + pb()) * pow_signed(ur, pp());
}

double EqPoint::f(double r, double u, double ur) const {
  double n1 = pn() - 1;
  if (family == Family::A)
    return n1 * (pc() + pb() * pow_signed(u, pp())) * ur / r +
           pa() * pow_signed(u, pp() - 1) * ur * ur;
  return n1 * (pc() * ur + pb() * pow_signed(ur, pp() + 1)) / r;
}

Trajectory solve_radial(const EqPoint& eq, const Profile& u0, const Profile& v0,
                        const Grid& grid, const SolveOptions& opts) {
  if (grid.r0 <= 0) fail("CFLViolation", "grid must exclude the origin (r0 > 0)");
  Trajectory traj;
  traj.eq = eq;
  traj.grid = grid;
  int np = grid.nr + 1;
  double dr = grid.dr();
  traj.rs.resize(np);
  for (int i = 0; i < np; ++i) traj.rs[i] = grid.r0 + i * dr;

  std::vector<double> um(np), uc(np), un(np), vt(np);
  for (int i = 0; i < np; ++i) {
    uc[i] = u0(traj.rs[i]);
    vt[i] = v0(traj.rs[i]);
  }

  auto ur_at = [&](const std::vector<double>& w, int i) {
    if (i == 0) return (-3 * w[0] + 4 * w[1] - w[2]) / (2 * dr);
    if (i == np - 1) return (3 * w[np - 1] - 4 * w[np - 2] + w[np - 3]) / (2 * dr);
    return (w[i + 1] - w[i - 1]) / (2 * dr);
  };

  // frozen-coefficient CFL estimate over the initial data
  double gmax = 0;
  for (int i = 0; i < np; ++i) {
    double g = eq.g(traj.rs[i], uc[i], ur_at(uc, i));
    if (!(g > 0))
      fail("HyperbolicityLoss",
           "g <= 0 on the initial data at r = " + std::to_string(traj.rs[i]));
    gmax = std::max(gmax, g);
  }
  double dt_max = grid.cfl * dr / std::sqrt(gmax);
  double dt = grid.dt_override > 0 ? grid.dt_override : dt_max;
  if (dt > dt_max * (1 + 1e-12))
    fail("CFLViolation", "dt " + std::to_string(dt) + " exceeds the stable bound " +
                             std::to_string(dt_max));
  traj.dt = dt;
  int steps = static_cast<int>(std::ceil(grid.t_end / dt - 1e-9));

  auto accel = [&](const std::vector<double>& w, double t, int i) {
    double ur = (w[i + 1] - w[i - 1]) / (2 * dr);
    double urr = (w[i + 1] - 2 * w[i] + w[i - 1]) / (dr * dr);
    double g = eq.g(traj.rs[i], w[i], ur);
    double a = g * urr + eq.f(traj.rs[i], w[i], ur);
    if (opts.forcing) a += opts.forcing(t, traj.rs[i]);
    return a;
  };

  auto snapshot = [&](double t, const std::vector<double>& w, const std::vector<double>& wt) {
    traj.times.push_back(t);
    traj.u.push_back(w);
    traj.ut.push_back(wt);
  };
  snapshot(0.0, uc, vt);

  // first step: Taylor start, second order
  um = uc;
  for (int i = 1; i < np - 1; ++i)
    un[i] = uc[i] + dt * vt[i] + 0.5 * dt * dt * accel(uc, 0.0, i);
  un[0] = opts.boundary_left ? opts.boundary_left(dt, traj.rs[0]) : uc[0];
  un[np - 1] = opts.boundary_right ? opts.boundary_right(dt, traj.rs[np - 1]) : uc[np - 1];
  um = uc;
  uc = un;

  for (int step = 1; step <= steps; ++step) {
    double t = step * dt;
    bool bad = false;
    for (int i = 1; i < np - 1 && !bad; ++i) {
      double ur = (uc[i + 1] - uc[i - 1]) / (2 * dr);
      double g = eq.g(traj.rs[i], uc[i], ur);
      if (!(g > 0)) {
        traj.status = Trajectory::Status::kHyperbolicityLoss;
        traj.flag_note = "g <= 0 at t = " + std::to_string(t) + ", r = " +
                         std::to_string(traj.rs[i]);
        bad = true;
      }
    }
    if (bad) break;
    for (int i = 1; i < np - 1; ++i)
      un[i] = 2 * uc[i] - um[i] + dt * dt * accel(uc, t, i);
    un[0] = opts.boundary_left ? opts.boundary_left(t + dt, traj.rs[0]) : um[0];
    un[np - 1] =
        opts.boundary_right ? opts.boundary_right(t + dt, traj.rs[np - 1]) : um[np - 1];
    for (int i = 0; i < np; ++i) {
      if (!std::isfinite(un[i]) || std::abs(un[i]) > opts.overflow_guard) {
        traj.status = Trajectory::Status::kBlowUp;
        traj.flag_note = "overflow guard tripped at t = " + std::to_string(t);
        bad = true;
        break;
      }
    }
    if (bad) break;
    if (step % grid.save_every == 0 || step == steps) {
      for (int i = 0; i < np; ++i) vt[i] = (un[i] - um[i]) / (2 * dt);
      snapshot(t, uc, vt);
    }
    um = uc;
    uc = un;
  }
  return traj;
}

CompiledExpr::CompiledExpr(const Expr& e, const ParamPoint& pt) {
  for (auto& t : e.terms()) {
    CTerm ct;
    ct.coeff = t.coeff.eval_double(pt);
    for (auto& f : t.factors) {
      CFactor cf;
      cf.exp = f.exp.eval_double(pt);
      VarId base = f.var.is_log() ? f.var.log_base() : f.var;
      cf.log = f.var.is_log();
      if (base == VarId::t())
        cf.slot = 0;
      else if (base == VarId::r())
        cf.slot = 1;
      else if (base == VarId::u())
        cf.slot = 2;
      else if (base == VarId::ut())
        cf.slot = 3;
      else if (base == VarId::ur())
        cf.slot = 4;
      else
        fail("Internal", "CompiledExpr: unsupported variable " + f.var.name());
      ct.factors.push_back(cf);
    }
    terms_.push_back(std::move(ct));
  }
}

double CompiledExpr::eval(double t, double r, double u, double ut, double ur) const {
  double vals[5] = {t, r, u, ut, ur};
  double acc = 0;
  for (auto& term : terms_) {
    double v = term.coeff;
    for (auto& f : term.factors) {
      double base = vals[f.slot];
      if (f.log) {
        v *= std::pow(std::log(base), f.exp);
      } else {
        v *= pow_signed(base, f.exp);
      }
    }
    acc += v;
  }
  return acc;
}

namespace {

double trapezoid(const std::vector<double>& y, double dr) {
  double s = 0;
  for (size_t i = 0; i + 1 < y.size(); ++i) s += 0.5 * (y[i] + y[i + 1]);
  return s * dr;
}

std::vector<double> centered_ur(const std::vector<double>& u, double dr) {
  size_t np = u.size();
  std::vector<double> ur(np);
  for (size_t i = 1; i + 1 < np; ++i) ur[i] = (u[i + 1] - u[i - 1]) / (2 * dr);
  ur[0] = (-3 * u[0] + 4 * u[1] - u[2]) / (2 * dr);
  ur[np - 1] = (3 * u[np - 1] - 4 * u[np - 2] + u[np - 3]) / (2 * dr);
  return ur;
}

}  // namespace

MonitorSeries monitor(const Trajectory& traj, const Expr& T, const Expr& X) {
  CompiledExpr Tc(T, traj.eq.params), Xc(X, traj.eq.params);
  MonitorSeries s;
  double dr = traj.grid.dr();
  size_t np = traj.rs.size();
  for (size_t k = 0; k < traj.times.size(); ++k) {
    double t = traj.times[k];
    auto ur = centered_ur(traj.u[k], dr);
    std::vector<double> integrand(np);
    for (size_t i = 0; i < np; ++i)
      integrand[i] = Tc.eval(t, traj.rs[i], traj.u[k][i], traj.ut[k][i], ur[i]);
    s.times.push_back(t);
    s.C.push_back(trapezoid(integrand, dr));
    s.X_left.push_back(Xc.eval(t, traj.rs[0], traj.u[k][0], traj.ut[k][0], ur[0]));
    s.X_right.push_back(
        Xc.eval(t, traj.rs[np - 1], traj.u[k][np - 1], traj.ut[k][np - 1], ur[np - 1]));
  }
  double c0 = s.C.empty() ? 0 : s.C[0];
  for (double c : s.C) {
    double d = std::abs(c - c0);
    s.drift.push_back(d);
    s.max_drift = std::max(s.max_drift, d);
  }
  s.max_rel_drift = std::abs(c0) > 1e-300 ? s.max_drift / std::abs(c0) : s.max_drift;
  return s;
}

MonitorSeries kinematic_quantity(const Trajectory& traj, double weight) {
  MonitorSeries s;
  double dr = traj.grid.dr();
  size_t np = traj.rs.size();
  for (size_t k = 0; k < traj.times.size(); ++k) {
    std::vector<double> integrand(np);
    for (size_t i = 0; i < np; ++i)
      integrand[i] = traj.u[k][i] * std::pow(traj.rs[i], weight);
    s.times.push_back(traj.times[k]);
    s.C.push_back(trapezoid(integrand, dr));
    s.X_left.push_back(0);
    s.X_right.push_back(0);
  }
  double c0 = s.C.empty() ? 0 : s.C[0];
  for (double c : s.C) {
    double d = std::abs(c - c0);
    s.drift.push_back(d);
    s.max_drift = std::max(s.max_drift, d);
  }
  s.max_rel_drift = std::abs(c0) > 1e-300 ? s.max_drift / std::abs(c0) : s.max_drift;
  return s;
}

double linear_fit_residual(const MonitorSeries& s) {
  size_t n = s.times.size();
  if (n < 3) return 0;
  double st = 0, sc = 0, stt = 0, stc = 0;
  for (size_t i = 0; i < n; ++i) {
    st += s.times[i];
    sc += s.C[i];
    stt += s.times[i] * s.times[i];
    stc += s.times[i] * s.C[i];
  }
  double det = n * stt - st * st;
  double slope = (n * stc - st * sc) / det;
  double icept = (sc * stt - st * stc) / det;
  double rss = 0, scale = 0;
  for (size_t i = 0; i < n; ++i) {
    double e = s.C[i] - (slope * s.times[i] + icept);
    rss += e * e;
    scale = std::max(scale, std::abs(s.C[i]));
  }
  double rms = std::sqrt(rss / n);
  return scale > 0 ? rms / scale : rms;
}

double flux_balance_defect(const MonitorSeries& s) {
  // trapezoid-integrate dC/dt + (X(R) - X(r0)) over the run; report the
  // largest running defect against C's scale
  double defect = 0, max_defect = 0, scale = 1e-300;
  for (size_t i = 0; i + 1 < s.times.size(); ++i) {
    double dtk = s.times[i + 1] - s.times[i];
    double dC = s.C[i + 1] - s.C[i];
    double flux = 0.5 * ((s.X_right[i] - s.X_left[i]) + (s.X_right[i + 1] - s.X_left[i + 1]));
    defect += dC + flux * dtk;
    max_defect = std::max(max_defect, std::abs(defect));
    scale = std::max(scale, std::abs(s.C[i]));
  }
  return max_defect / scale;
}

ForcingReport forcing_check(const Trajectory& traj) {
  const EqPoint& eq = traj.eq;
  double a = eq.pa(), b = eq.pb(), c = eq.pc(), p = eq.pp(), n = eq.pn();
  double nu = 2 - n;
  double dr = traj.grid.dr();
  size_t np = traj.rs.size();

  auto Hu = [&](double u) {
    if (std::abs(p + 1) < 1e-12) return std::log(u);
    return pow_signed(u, p + 1) / (p + 1);
  };
  auto Htilde = [&](double ur) {
    if (std::abs(p + 1) < 1e-12) return std::log(ur) + b * (1 - nu) / (a + b);
    return pow_signed(ur, p + 1) / (p + 1);
  };

  // boundary flux and source density of the two-dimensional form
  auto boundary_flux = [&](double r, double u, double ur) {
    if (eq.family == Family::A)
      return r * (c + b * pow_signed(u, p)) * ur - nu * (c * u + b * Hu(u));
    return r * (c * ur + (a + b) * Htilde(ur)) - nu * c * u;
  };
  auto source = [&](double /*r*/, double u, double ur) {
    if (eq.family == Family::A) return 0.0;  // handled with the r factor below
    (void)u;
    return b * (1 - nu) * pow_signed(ur, p + 1) - (a + b) * Htilde(ur);
  };

  // C(t) = integral u r dr
  std::vector<double> C(traj.times.size());
  std::vector<double> rhs(traj.times.size());
  for (size_t k = 0; k < traj.times.size(); ++k) {
    std::vector<double> integ(np), src(np);
    auto ur = centered_ur(traj.u[k], dr);
    for (size_t i = 0; i < np; ++i) {
      integ[i] = traj.u[k][i] * traj.rs[i];
      if (eq.family == Family::A)
        src[i] = (a - p * b) * pow_signed(traj.u[k][i], p - 1) * ur[i] * ur[i] * traj.rs[i];
      else
        src[i] = source(traj.rs[i], traj.u[k][i], ur[i]);
    }
    C[k] = trapezoid(integ, dr);
    rhs[k] = boundary_flux(traj.rs[np - 1], traj.u[k][np - 1], ur[np - 1]) -
             boundary_flux(traj.rs[0], traj.u[k][0], ur[0]) + trapezoid(src, dr);
  }

  ForcingReport rep;
  for (size_t k = 1; k + 1 < traj.times.size(); ++k) {
    double dtk = traj.times[k + 1] - traj.times[k];
    double d2C = (C[k + 1] - 2 * C[k] + C[k - 1]) / (dtk * dtk);
    rep.times.push_back(traj.times[k]);
    rep.lhs.push_back(d2C);
    rep.rhs.push_back(rhs[k]);
    rep.max_abs_discrepancy = std::max(rep.max_abs_discrepancy, std::abs(d2C - rhs[k]));
    rep.scale = std::max(rep.scale, std::abs(rhs[k]));
  }
  return rep;
}

double convergence_order(double coarse_err, double fine_err) {
  if (fine_err <= 0 || coarse_err <= 0) return 0;
  return std::log2(coarse_err / fine_err);
}

}  // namespace symmwave
