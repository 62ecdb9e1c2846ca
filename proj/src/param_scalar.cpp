#include "symmwave/param_scalar.hpp"

#include <sstream>

namespace symmwave {

ParamScalar::ParamScalar(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) fail("DivisionByZeroOnBranch", "zero denominator");
  reduce();
}

void ParamScalar::reduce() {
  if (num_.is_zero()) {
    den_ = Poly{Rat(1)};
    return;
  }
  if (!den_.is_constant()) {
    Poly g = Poly::gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = num_.divide_exact(g);
      den_ = den_.divide_exact(g);
    }
  }
  // monic denominator carries the whole normalization
  Rat lc = den_.lead_coeff();
  if (lc != 1) {
    Poly scale{Rat(1) / lc};
    num_ *= scale;
    den_ *= scale;
  }
}

bool ParamScalar::is_one() const {
  return den_.is_constant() && den_.constant_value() == 1 && num_.is_constant() &&
         num_.constant_value() == 1;
}

Rat ParamScalar::constant_value() const {
  if (!is_constant()) fail("Internal", "ParamScalar not constant: " + str());
  if (num_.is_zero()) return Rat(0);
  Rat q = num_.constant_value() / den_.constant_value();
  q.canonicalize();
  return q;
}

std::optional<long> ParamScalar::as_long() const {
  if (!is_constant()) return std::nullopt;
  Rat q = constant_value();
  if (q.get_den() != 1) return std::nullopt;
  if (!q.get_num().fits_slong_p()) return std::nullopt;
  return q.get_num().get_si();
}

ParamScalar ParamScalar::operator-() const {
  ParamScalar r = *this;
  r.num_ = -r.num_;
  return r;
}

ParamScalar operator+(const ParamScalar& x, const ParamScalar& y) {
  return ParamScalar(x.num_ * y.den_ + y.num_ * x.den_, x.den_ * y.den_);
}

ParamScalar operator-(const ParamScalar& x, const ParamScalar& y) {
  return ParamScalar(x.num_ * y.den_ - y.num_ * x.den_, x.den_ * y.den_);
}

ParamScalar operator*(const ParamScalar& x, const ParamScalar& y) {
  return ParamScalar(x.num_ * y.num_, x.den_ * y.den_);
}

ParamScalar operator/(const ParamScalar& x, const ParamScalar& y) {
  if (y.is_zero()) fail("DivisionByZeroOnBranch", "division by zero scalar");
  return ParamScalar(x.num_ * y.den_, x.den_ * y.num_);
}

ParamScalar ParamScalar::inverse() const {
  if (is_zero()) fail("DivisionByZeroOnBranch", "inverse of zero scalar");
  return ParamScalar(den_, num_);
}

ParamScalar ParamScalar::pow(long e) const {
  if (e == 0) return ParamScalar(Rat(1));
  if (e < 0) return inverse().pow(-e);
  return ParamScalar(num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)));
}

int ParamScalar::cmp(const ParamScalar& o) const {
  int c = num_.cmp(o.num_);
  if (c != 0) return c;
  return den_.cmp(o.den_);
}

std::optional<Rat> ParamScalar::eval(const ParamPoint& pt) const {
  Rat d = den_.eval(pt);
  if (d == 0) return std::nullopt;
  Rat q = num_.eval(pt) / d;
  q.canonicalize();
  return q;
}

double ParamScalar::eval_double(const ParamPoint& pt) const {
  auto v = eval(pt);
  if (!v) fail("DivisionByZeroOnBranch", "scalar denominator vanishes at point: " + str());
  return v->get_d();
}

ParamScalar ParamScalar::subst(Param v, const ParamScalar& s) const {
  auto subst_poly = [&](const Poly& poly) -> ParamScalar {
    int d = poly.degree(v);
    // poly = sum_k coeff_k * v^k  ->  sum_k coeff_k * s^k, over common den s.den^d
    ParamScalar acc;
    for (int k = 0; k <= d; ++k) {
      Poly ck = poly.coeff_of(v, k);
      if (ck.is_zero()) continue;
      acc += ParamScalar(ck) * s.pow(k);
    }
    return acc;
  };
  ParamScalar nn = subst_poly(num_);
  ParamScalar dd = subst_poly(den_);
  if (dd.is_zero())
    fail("DivisionByZeroOnBranch",
         "denominator (" + den_.str() + ") vanishes identically under substitution of " +
             param_name(v));
  return nn / dd;
}

std::string ParamScalar::str() const {
  if (den_.is_constant() && den_.constant_value() == 1) {
    if (num_.num_terms() > 1) return "(" + num_.str() + ")";
    return num_.str();
  }
  std::ostringstream os;
  os << "(" << num_.str() << ")/(" << den_.str() << ")";
  return os.str();
}

}  // namespace symmwave
