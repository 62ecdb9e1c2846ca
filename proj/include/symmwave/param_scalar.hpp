#pragma once

#include <optional>
#include <string>

#include "symmwave/poly.hpp"

namespace symmwave {

// Element of the rational-function field Q(a,b,c,p,n). Kept reduced
// (gcd(num,den) = 1) with a monic denominator, so equal values have equal
// representations and structural comparison decides equality.
class ParamScalar {
 public:
  ParamScalar() : num_(), den_(Rat(1)) {}
  ParamScalar(const Rat& q) : num_(q), den_(Rat(1)) {}  // NOLINT(implicit)
  ParamScalar(long v) : num_(Rat(v)), den_(Rat(1)) {}   // NOLINT(implicit)
  explicit ParamScalar(const Poly& p) : num_(p), den_(Rat(1)) {}
  ParamScalar(Poly num, Poly den);  // reduces
  static ParamScalar var(Param p) { return ParamScalar(Poly::var(p)); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const;
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  Rat constant_value() const;  // requires is_constant
  // integer constant (e.g. log exponents, binomial powers)
  std::optional<long> as_long() const;
  bool depends_on(Param v) const { return num_.depends_on(v) || den_.depends_on(v); }

  ParamScalar operator-() const;
  friend ParamScalar operator+(const ParamScalar& x, const ParamScalar& y);
  friend ParamScalar operator-(const ParamScalar& x, const ParamScalar& y);
  friend ParamScalar operator*(const ParamScalar& x, const ParamScalar& y);
  friend ParamScalar operator/(const ParamScalar& x, const ParamScalar& y);
  ParamScalar& operator+=(const ParamScalar& o) { return *this = *this + o; }
  ParamScalar& operator-=(const ParamScalar& o) { return *this = *this - o; }
  ParamScalar& operator*=(const ParamScalar& o) { return *this = *this * o; }
  ParamScalar& operator/=(const ParamScalar& o) { return *this = *this / o; }
  ParamScalar inverse() const;
  ParamScalar pow(long e) const;

  bool operator==(const ParamScalar& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }
  bool operator!=(const ParamScalar& o) const { return !(*this == o); }
  int cmp(const ParamScalar& o) const;
  bool operator<(const ParamScalar& o) const { return cmp(o) < 0; }

  // nullopt when the denominator vanishes at the point
  std::optional<Rat> eval(const ParamPoint& pt) const;
  double eval_double(const ParamPoint& pt) const;

  // substitute v := s; fails with DivisionByZeroOnBranch if the denominator
  // becomes identically zero
  ParamScalar subst(Param v, const ParamScalar& s) const;

  std::string str() const;

 private:
  void reduce();
  Poly num_, den_;
};

}  // namespace symmwave
