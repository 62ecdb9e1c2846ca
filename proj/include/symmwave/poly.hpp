#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "symmwave/common.hpp"

namespace symmwave {

// The five free parameters of the two wave-equation families. Derived
// auxiliaries (k = a+b, m, nu) are expanded into these on construction.
enum class Param : uint8_t { A = 0, B = 1, C = 2, P = 3, N = 4 };
inline constexpr int kNumParams = 5;

const char* param_name(Param p);
std::optional<Param> param_from_name(const std::string& s);

using ParamPoint = std::array<Rat, kNumParams>;

// Exponent vector of a monomial in (a, b, c, p, n).
using Mono = std::array<int16_t, kNumParams>;

int mono_total_degree(const Mono& m);
// graded lex: higher total degree first, then lex on (a, b, c, p, n)
int mono_cmp(const Mono& x, const Mono& y);

// Multivariate polynomial over Q in the five parameters. Terms are kept
// sorted descending in graded-lex order with nonzero coefficients, which
// makes the representation canonical.
class Poly {
 public:
  Poly() = default;
  explicit Poly(const Rat& c);
  static Poly var(Param p, int exp = 1);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  const Rat& constant_value() const;  // requires is_constant (zero -> 0)

  int degree(Param v) const;
  int total_degree() const;
  bool depends_on(Param v) const;
  size_t num_terms() const { return terms_.size(); }

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly x, const Poly& y) { return x += y; }
  friend Poly operator-(Poly x, const Poly& y) { return x -= y; }
  friend Poly operator*(const Poly& x, const Poly& y);
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly pow(unsigned e) const;

  bool operator==(const Poly& o) const { return terms_ == o.terms_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }
  // total order for canonical maps: by terms, graded-lex then coefficient
  int cmp(const Poly& o) const;

  Rat eval(const ParamPoint& pt) const;

  // Leading (graded-lex greatest) term.
  const Mono& lead_mono() const;
  const Rat& lead_coeff() const;

  // Scales so coefficients are coprime integers with positive leading
  // coefficient; returns the rational factor removed (so that
  // before == factor * after). Zero polynomial returns 1.
  Rat make_primitive();

  // Exact division; fails if not divisible.
  Poly divide_exact(const Poly& d) const;
  bool try_divide_exact(const Poly& d, Poly& out) const;

  // gcd normalized primitive with positive leading coefficient
  static Poly gcd(const Poly& x, const Poly& y);

  // View as univariate in v: coefficient of v^k (a Poly in the other vars).
  Poly coeff_of(Param v, int k) const;

  std::string str() const;

  const std::vector<std::pair<Mono, Rat>>& terms() const { return terms_; }
  static Poly from_terms(std::vector<std::pair<Mono, Rat>> ts);

 private:
  void normalize();
  std::vector<std::pair<Mono, Rat>> terms_;
};

}  // namespace symmwave
