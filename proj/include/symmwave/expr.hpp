#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "symmwave/param_scalar.hpp"

namespace symmwave {

inline constexpr int kMaxROrder = 4;  // u, u_r, u_rr, u_rrr, u_rrrr and u_t* mates

// Identity of a multiplicand base: the coordinates t, r, the homotopy scaling
// symbol, a jet variable u_{t^i r^j} (i <= 1), or a logarithm of one of the
// allowed bases (r, u, u_t, u_r, lambda).
struct VarId {
  enum Kind : uint8_t {
    kT = 0,
    kR = 1,
    kLam = 2,
    kJet = 3,
    kLogR = 4,
    kLogU = 5,
    kLogUt = 6,
    kLogUr = 7,
    kLogLam = 8,
  };
  Kind kind = kT;
  uint8_t t_ord = 0, r_ord = 0;  // only for kJet

  static VarId t() { return {kT, 0, 0}; }
  static VarId r() { return {kR, 0, 0}; }
  static VarId lam() { return {kLam, 0, 0}; }
  static VarId jet(int t_order, int r_order);
  static VarId u() { return jet(0, 0); }
  static VarId ut() { return jet(1, 0); }
  static VarId ur() { return jet(0, 1); }
  static VarId utr() { return jet(1, 1); }
  static VarId urr() { return jet(0, 2); }
  static VarId log_of(VarId base);  // r, u, u_t, u_r, lam only

  bool is_jet() const { return kind == kJet; }
  bool is_log() const { return kind >= kLogR; }
  // the base variable a log factor refers to
  VarId log_base() const;
  int jet_order() const { return is_jet() ? t_ord + r_ord : 0; }

  // total order used for factor sorting and term keys
  uint32_t sort_key() const;
  bool operator==(const VarId& o) const {
    return kind == o.kind && t_ord == o.t_ord && r_ord == o.r_ord;
  }
  bool operator!=(const VarId& o) const { return !(*this == o); }
  bool operator<(const VarId& o) const { return sort_key() < o.sort_key(); }

  std::string name() const;  // "u_tr", "ln(u_r)", ...
};

struct Factor {
  VarId var;
  ParamScalar exp;
};

struct Term {
  ParamScalar coeff;
  std::vector<Factor> factors;  // sorted by var, unique vars, nonzero exps

  // exponent of var in this term (0 when absent)
  const ParamScalar* find_exp(VarId v) const;
  int max_jet_t_order() const;
  int max_jet_r_order() const;
  bool same_factors(const Term& o) const;
};

// compares factor structure only (not coefficients)
int term_key_cmp(const Term& x, const Term& y);

// Canonical sum-of-terms expression over jet coordinates with
// rational-function coefficients and exponents. Immutable value semantics;
// two expressions represent the same function on a branch iff their canonical
// forms agree after branch substitution.
class Expr {
 public:
  Expr() = default;
  static Expr zero() { return Expr(); }
  static Expr constant(const ParamScalar& c);
  static Expr constant(long v) { return constant(ParamScalar(v)); }
  static Expr var(VarId v);
  static Expr var_pow(VarId v, const ParamScalar& e);
  static Expr from_terms(std::vector<Term> ts);
  static Expr param(Param p) { return constant(ParamScalar::var(p)); }

  bool is_zero() const { return terms_.empty(); }
  const std::vector<Term>& terms() const { return terms_; }
  size_t num_terms() const { return terms_.size(); }

  Expr operator-() const;
  friend Expr operator+(const Expr& x, const Expr& y);
  friend Expr operator-(const Expr& x, const Expr& y);
  friend Expr operator*(const Expr& x, const Expr& y);
  Expr& operator+=(const Expr& o) { return *this = *this + o; }
  Expr& operator-=(const Expr& o) { return *this = *this - o; }
  Expr& operator*=(const Expr& o) { return *this = *this * o; }
  Expr scale(const ParamScalar& s) const;

  // monomial or nonnegative-integer power; NonMonomialPower otherwise
  Expr pow(const ParamScalar& s) const;
  // division by a monomial or a parameter-only expression
  friend Expr operator/(const Expr& x, const Expr& y);

  bool operator==(const Expr& o) const;
  bool operator!=(const Expr& o) const { return !(*this == o); }

  // partial derivative with respect to a value variable (t, r, lam or a jet
  // coordinate); log factors of that variable are differentiated too
  Expr partial(VarId v) const;

  bool depends_on(VarId v) const;
  bool has_any_jet() const;
  int max_jet_t_order() const;
  int max_jet_r_order() const;
  // largest jet order (t+r) occurring, 0 if none
  int jet_order() const;
  bool has_log() const;
  bool depends_on_param(Param p) const;

  // parameter substitution (one step / full branch sequence elsewhere)
  Expr subst_param(Param v, const ParamScalar& s) const;

  // u -> u + nu (integer exponents only; used for the shifted family-A map)
  Expr shift_u(const ParamScalar& nu) const;

  // multiply every listed variable by lambda: v^e -> lam^e v^e,
  // ln v -> ln lam + ln v
  Expr scale_vars_by_lambda(const std::vector<VarId>& vars) const;

  // numeric evaluation; jet/coordinate values keyed by VarId::sort_key()
  using ValueMap = std::map<uint32_t, Rat>;
  // exact value as a polynomial in the formal log symbols
  // (ln r, ln u, ln u_t, ln u_r, ln lam): exponent vector -> coefficient.
  // Requires every factor exponent to evaluate to a (small) integer.
  std::map<std::array<int, 5>, Rat> eval_exact(const ParamPoint& pt,
                                               const ValueMap& vals) const;
  double eval_double(const ParamPoint& pt, const std::map<uint32_t, double>& vals) const;

  std::string str() const;

 private:
  void normalize();
  std::vector<Term> terms_;
};

Expr operator*(const ParamScalar& s, const Expr& e);

}  // namespace symmwave
