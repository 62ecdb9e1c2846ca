#include "symmwave/expr.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace symmwave {

VarId VarId::jet(int t_order, int r_order) {
  if (t_order < 0 || t_order > 1)
    fail("OrderTooHigh", "jet t-order " + std::to_string(t_order) +
                             " is not representable (on-shell convention)");
  if (r_order < 0 || r_order > kMaxROrder)
    fail("JetOrderExceeded", "jet r-order " + std::to_string(r_order) + " exceeds cap " +
                                 std::to_string(kMaxROrder));
  return {kJet, static_cast<uint8_t>(t_order), static_cast<uint8_t>(r_order)};
}

VarId VarId::log_of(VarId base) {
  if (base.kind == kR) return {kLogR, 0, 0};
  if (base.kind == kLam) return {kLogLam, 0, 0};
  if (base.kind == kJet && base.t_ord == 0 && base.r_ord == 0) return {kLogU, 0, 0};
  if (base.kind == kJet && base.t_ord == 1 && base.r_ord == 0) return {kLogUt, 0, 0};
  if (base.kind == kJet && base.t_ord == 0 && base.r_ord == 1) return {kLogUr, 0, 0};
  fail("UnknownSymbol", "log of unsupported base " + base.name());
}

VarId VarId::log_base() const {
  switch (kind) {
    case kLogR: return r();
    case kLogU: return u();
    case kLogUt: return ut();
    case kLogUr: return ur();
    case kLogLam: return lam();
    default: fail("Internal", "log_base of non-log var");
  }
}

uint32_t VarId::sort_key() const {
  // t < r < ln r < lam < ln lam < jets (by order) < ln u < ln u_t < ln u_r
  switch (kind) {
    case kT: return 0;
    case kR: return 1;
    case kLogR: return 2;
    case kLam: return 3;
    case kLogLam: return 4;
    case kJet:
      return 100u + (static_cast<uint32_t>(t_ord + r_ord) << 8) +
             (static_cast<uint32_t>(t_ord) << 4) + r_ord;
    case kLogU: return 100000;
    case kLogUt: return 100001;
    case kLogUr: return 100002;
  }
  return ~0u;
}

std::string VarId::name() const {
  switch (kind) {
    case kT: return "t";
    case kR: return "r";
    case kLam: return "lam";
    case kLogR: return "ln(r)";
    case kLogU: return "ln(u)";
    case kLogUt: return "ln(u_t)";
    case kLogUr: return "ln(u_r)";
    case kLogLam: return "ln(lam)";
    case kJet: {
      if (t_ord == 0 && r_ord == 0) return "u";
      std::string s = "u_";
      for (int i = 0; i < t_ord; ++i) s += 't';
      for (int i = 0; i < r_ord; ++i) s += 'r';
      return s;
    }
  }
  return "?";
}

const ParamScalar* Term::find_exp(VarId v) const {
  for (auto& f : factors)
    if (f.var == v) return &f.exp;
  return nullptr;
}

int Term::max_jet_t_order() const {
  int d = 0;
  for (auto& f : factors)
    if (f.var.is_jet()) d = std::max<int>(d, f.var.t_ord);
  return d;
}

int Term::max_jet_r_order() const {
  int d = 0;
  for (auto& f : factors)
    if (f.var.is_jet()) d = std::max<int>(d, f.var.r_ord);
  return d;
}

bool Term::same_factors(const Term& o) const {
  if (factors.size() != o.factors.size()) return false;
  for (size_t i = 0; i < factors.size(); ++i)
    if (factors[i].var != o.factors[i].var || factors[i].exp != o.factors[i].exp) return false;
  return true;
}

namespace {

// grade used for the graded-lexicographic term order: jet orders weighted by
// the exponent when it is a small positive integer
int term_grade(const Term& t) {
  int g = 0;
  for (auto& f : t.factors) {
    int unit = 0;
    if (f.var.is_jet())
      unit = f.var.jet_order();
    else if (f.var.kind == VarId::kLogU || f.var.kind == VarId::kLogUt ||
             f.var.kind == VarId::kLogUr)
      unit = f.var.log_base().jet_order();
    if (unit == 0) continue;
    auto e = f.exp.as_long();
    int w = (e && *e > 0 && *e < 64) ? static_cast<int>(*e) : 1;
    g += unit * w;
  }
  return g;
}

}  // namespace

int term_key_cmp(const Term& x, const Term& y) {
  int gx = term_grade(x), gy = term_grade(y);
  if (gx != gy) return gx < gy ? -1 : 1;
  size_t k = std::min(x.factors.size(), y.factors.size());
  for (size_t i = 0; i < k; ++i) {
    uint32_t kx = x.factors[i].var.sort_key(), ky = y.factors[i].var.sort_key();
    if (kx != ky) return kx < ky ? -1 : 1;
    int c = x.factors[i].exp.cmp(y.factors[i].exp);
    if (c != 0) return c;
  }
  if (x.factors.size() != y.factors.size())
    return x.factors.size() < y.factors.size() ? -1 : 1;
  return 0;
}

void Expr::normalize() {
  for (auto& t : terms_) {
    std::sort(t.factors.begin(), t.factors.end(),
              [](const Factor& a, const Factor& b) { return a.var < b.var; });
    // merge duplicate vars, drop zero exponents
    std::vector<Factor> fs;
    for (auto& f : t.factors) {
      if (!fs.empty() && fs.back().var == f.var)
        fs.back().exp += f.exp;
      else
        fs.push_back(f);
    }
    std::vector<Factor> out;
    for (auto& f : fs) {
      if (f.exp.is_zero()) continue;
      if (f.var.is_log()) {
        auto e = f.exp.as_long();
        if (!e || *e <= 0)
          fail("Internal", "log factor with non-positive-integer exponent " + f.exp.str());
      }
      out.push_back(f);
    }
    t.factors = std::move(out);
  }
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return term_key_cmp(a, b) < 0; });
  std::vector<Term> merged;
  for (auto& t : terms_) {
    if (t.coeff.is_zero()) continue;
    if (!merged.empty() && merged.back().same_factors(t))
      merged.back().coeff += t.coeff;
    else
      merged.push_back(t);
    if (!merged.empty() && merged.back().coeff.is_zero()) merged.pop_back();
  }
  terms_ = std::move(merged);
}

Expr Expr::from_terms(std::vector<Term> ts) {
  Expr e;
  e.terms_ = std::move(ts);
  e.normalize();
  return e;
}

Expr Expr::constant(const ParamScalar& c) {
  if (c.is_zero()) return Expr();
  return from_terms({Term{c, {}}});
}

Expr Expr::var(VarId v) { return var_pow(v, ParamScalar(1)); }

Expr Expr::var_pow(VarId v, const ParamScalar& e) {
  if (e.is_zero()) return constant(1);
  return from_terms({Term{ParamScalar(1), {Factor{v, e}}}});
}

Expr Expr::operator-() const {
  Expr r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

Expr operator+(const Expr& x, const Expr& y) {
  std::vector<Term> ts = x.terms_;
  ts.insert(ts.end(), y.terms_.begin(), y.terms_.end());
  return Expr::from_terms(std::move(ts));
}

Expr operator-(const Expr& x, const Expr& y) { return x + (-y); }

Expr operator*(const Expr& x, const Expr& y) {
  std::vector<Term> ts;
  ts.reserve(x.terms_.size() * y.terms_.size());
  for (auto& tx : x.terms_)
    for (auto& ty : y.terms_) {
      Term t;
      t.coeff = tx.coeff * ty.coeff;
      t.factors = tx.factors;
      t.factors.insert(t.factors.end(), ty.factors.begin(), ty.factors.end());
      ts.push_back(std::move(t));
    }
  return Expr::from_terms(std::move(ts));
}

Expr Expr::scale(const ParamScalar& s) const {
  if (s.is_zero()) return Expr();
  Expr r = *this;
  for (auto& t : r.terms_) t.coeff = t.coeff * s;
  return r;
}

Expr operator*(const ParamScalar& s, const Expr& e) { return e.scale(s); }

Expr Expr::pow(const ParamScalar& s) const {
  auto e_int = s.as_long();
  if (terms_.empty()) {
    if (e_int && *e_int == 0) return constant(1);
    return Expr();
  }
  if (terms_.size() == 1) {
    const Term& t = terms_[0];
    Term out;
    if (e_int) {
      out.coeff = t.coeff.pow(*e_int);
    } else {
      if (!t.coeff.is_one())
        fail("NonMonomialPower",
             "cannot raise coefficient " + t.coeff.str() + " to symbolic power " + s.str());
      out.coeff = ParamScalar(1);
    }
    for (auto& f : t.factors) {
      if (f.var.is_log() && !e_int)
        fail("NonMonomialPower", "cannot raise log factor to symbolic power");
      out.factors.push_back(Factor{f.var, f.exp * s});
    }
    return from_terms({out});
  }
  if (!e_int || *e_int < 0)
    fail("NonMonomialPower",
         "sum of " + std::to_string(terms_.size()) + " terms raised to power " + s.str());
  Expr r = constant(1), base = *this;
  long e = *e_int;
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

Expr operator/(const Expr& x, const Expr& y) {
  if (y.is_zero()) fail("DivisionByZeroOnBranch", "division by zero expression");
  if (y.num_terms() == 1) {
    const Term& d = y.terms()[0];
    for (auto& f : d.factors)
      if (f.var.is_log()) fail("NonMonomialPower", "division by log-bearing monomial");
    std::vector<Term> ts;
    for (auto& t : x.terms()) {
      Term o = t;
      o.coeff = o.coeff / d.coeff;
      for (auto& f : d.factors) o.factors.push_back(Factor{f.var, -f.exp});
      ts.push_back(std::move(o));
    }
    return Expr::from_terms(std::move(ts));
  }
  fail("NonMonomialPower", "division by a non-monomial expression");
}

bool Expr::operator==(const Expr& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (size_t i = 0; i < terms_.size(); ++i) {
    if (!terms_[i].same_factors(o.terms_[i])) return false;
    if (terms_[i].coeff != o.terms_[i].coeff) return false;
  }
  return true;
}

Expr Expr::partial(VarId v) const {
  if (v.is_log()) fail("Internal", "partial with respect to a log factor");
  VarId lv{};
  bool has_log_companion = false;
  if (v.kind == VarId::kR || v.kind == VarId::kLam ||
      (v.is_jet() && v.jet_order() <= 1)) {
    lv = VarId::log_of(v);
    has_log_companion = true;
  }
  std::vector<Term> out;
  for (auto& t : terms_) {
    const ParamScalar* pe = t.find_exp(v);
    const ParamScalar* ple = has_log_companion ? t.find_exp(lv) : nullptr;
    // d/dv [ v^e ln(v)^k rest ] = v^(e-1) (e ln(v)^k + k ln(v)^(k-1)) rest
    if (pe) {
      Term nt;
      nt.coeff = t.coeff * (*pe);
      for (auto& f : t.factors) {
        if (f.var == v)
          nt.factors.push_back(Factor{v, f.exp - ParamScalar(1)});
        else
          nt.factors.push_back(f);
      }
      out.push_back(std::move(nt));
    }
    if (ple) {
      long k = *ple->as_long();
      Term nt;
      nt.coeff = t.coeff * ParamScalar(k);
      for (auto& f : t.factors) {
        if (f.var == lv)
          nt.factors.push_back(Factor{lv, ParamScalar(k - 1)});
        else
          nt.factors.push_back(f);
      }
      nt.factors.push_back(Factor{v, ParamScalar(-1)});
      out.push_back(std::move(nt));
    }
  }
  return from_terms(std::move(out));
}

bool Expr::depends_on(VarId v) const {
  for (auto& t : terms_)
    for (auto& f : t.factors)
      if (f.var == v || (f.var.is_log() && f.var.log_base() == v)) return true;
  return false;
}

bool Expr::has_any_jet() const {
  for (auto& t : terms_)
    for (auto& f : t.factors)
      if (f.var.is_jet() || f.var.kind == VarId::kLogU || f.var.kind == VarId::kLogUt ||
          f.var.kind == VarId::kLogUr)
        return true;
  return false;
}

int Expr::max_jet_t_order() const {
  int d = 0;
  for (auto& t : terms_) d = std::max(d, t.max_jet_t_order());
  return d;
}

int Expr::max_jet_r_order() const {
  int d = 0;
  for (auto& t : terms_) d = std::max(d, t.max_jet_r_order());
  return d;
}

int Expr::jet_order() const {
  int d = 0;
  for (auto& t : terms_)
    for (auto& f : t.factors) {
      if (f.var.is_jet()) d = std::max(d, f.var.jet_order());
      if (f.var.is_log() && f.var.kind != VarId::kLogR && f.var.kind != VarId::kLogLam)
        d = std::max(d, f.var.log_base().jet_order());
    }
  return d;
}

bool Expr::has_log() const {
  for (auto& t : terms_)
    for (auto& f : t.factors)
      if (f.var.is_log()) return true;
  return false;
}

bool Expr::depends_on_param(Param p) const {
  for (auto& t : terms_) {
    if (t.coeff.depends_on(p)) return true;
    for (auto& f : t.factors)
      if (f.exp.depends_on(p)) return true;
  }
  return false;
}

Expr Expr::subst_param(Param v, const ParamScalar& s) const {
  std::vector<Term> out;
  for (auto& t : terms_) {
    Term nt;
    nt.coeff = t.coeff.subst(v, s);
    for (auto& f : t.factors) nt.factors.push_back(Factor{f.var, f.exp.subst(v, s)});
    out.push_back(std::move(nt));
  }
  return from_terms(std::move(out));
}

Expr Expr::shift_u(const ParamScalar& nu) const {
  VarId u = VarId::u();
  Expr repl = Expr::var(u) + Expr::constant(nu);
  Expr result;
  for (auto& t : terms_) {
    Expr piece = constant(t.coeff);
    for (auto& f : t.factors) {
      if (f.var.is_log() && f.var.log_base() == u)
        fail("NonMonomialPower", "u-shift through ln(u) is not supported");
      if (f.var == u) {
        auto e = f.exp.as_long();
        if (!e || *e < 0)
          fail("NonMonomialPower",
               "u-shift requires nonnegative integer exponents, got " + f.exp.str());
        piece *= repl.pow(ParamScalar(*e));
      } else {
        piece *= var_pow(f.var, f.exp);
      }
    }
    result += piece;
  }
  return result;
}

Expr Expr::scale_vars_by_lambda(const std::vector<VarId>& vars) const {
  auto listed = [&](VarId v) {
    for (auto& w : vars)
      if (w == v) return true;
    return false;
  };
  Expr result;
  for (auto& t : terms_) {
    Expr piece = constant(t.coeff);
    ParamScalar lam_exp(0);
    for (auto& f : t.factors) {
      if (f.var.is_log() && f.var.kind != VarId::kLogR && f.var.kind != VarId::kLogLam &&
          listed(f.var.log_base())) {
        // ln(v)^k -> (ln lam + ln v)^k
        Expr sum = Expr::var(VarId::log_of(VarId::lam())) + Expr::var(f.var);
        piece *= sum.pow(f.exp);
      } else {
        if (f.var.is_jet() && listed(f.var)) lam_exp += f.exp;
        piece *= var_pow(f.var, f.exp);
      }
    }
    if (!lam_exp.is_zero()) piece *= var_pow(VarId::lam(), lam_exp);
    result += piece;
  }
  return result;
}

std::map<std::array<int, 5>, Rat> Expr::eval_exact(const ParamPoint& pt,
                                                   const ValueMap& vals) const {
  auto value_of = [&](VarId v) -> Rat {
    auto it = vals.find(v.sort_key());
    if (it == vals.end()) fail("Internal", "eval_exact missing value for " + v.name());
    return it->second;
  };
  std::map<std::array<int, 5>, Rat> acc;
  for (auto& t : terms_) {
    auto c = t.coeff.eval(pt);
    if (!c) fail("DivisionByZeroOnBranch", "coefficient denominator vanished in eval");
    Rat val = *c;
    std::array<int, 5> logs{0, 0, 0, 0, 0};
    for (auto& f : t.factors) {
      auto e = f.exp.eval(pt);
      if (!e) fail("DivisionByZeroOnBranch", "exponent denominator vanished in eval");
      if (e->get_den() != 1 || !e->get_num().fits_sint_p())
        fail("Internal", "eval_exact requires integer exponents, got " + e->get_str());
      int ei = static_cast<int>(e->get_num().get_si());
      if (f.var.is_log()) {
        int idx = f.var.kind - VarId::kLogR;
        logs[idx] += ei;
        continue;
      }
      Rat base = value_of(f.var);
      if (base == 0 && ei <= 0) fail("Internal", "eval_exact 0^nonpositive");
      Rat powv(1);
      Rat b = ei >= 0 ? base : Rat(1) / base;
      for (int k = 0; k < std::abs(ei); ++k) powv *= b;
      powv.canonicalize();
      val *= powv;
    }
    val.canonicalize();
    auto [it, fresh] = acc.emplace(logs, val);
    if (!fresh) it->second += val;
  }
  for (auto it = acc.begin(); it != acc.end();) {
    if (it->second == 0)
      it = acc.erase(it);
    else
      ++it;
  }
  return acc;
}

double Expr::eval_double(const ParamPoint& pt,
                         const std::map<uint32_t, double>& vals) const {
  auto value_of = [&](VarId v) -> double {
    auto it = vals.find(v.sort_key());
    if (it == vals.end()) fail("Internal", "eval_double missing value for " + v.name());
    return it->second;
  };
  double acc = 0;
  for (auto& t : terms_) {
    double val = t.coeff.eval_double(pt);
    for (auto& f : t.factors) {
      double e = f.exp.eval_double(pt);
      if (f.var.is_log()) {
        double base = value_of(f.var.log_base());
        if (base <= 0) fail("Internal", "eval_double log of non-positive base");
        val *= std::pow(std::log(base), e);
        continue;
      }
      double base = value_of(f.var);
      double pw;
      if (base > 0) {
        pw = std::pow(base, e);
      } else {
        double ei = std::round(e);
        if (std::abs(e - ei) > 1e-12)
          fail("Internal", "eval_double negative base with non-integer exponent");
        pw = std::pow(base, ei);
      }
      val *= pw;
    }
    acc += val;
  }
  return acc;
}

std::string Expr::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& t : terms_) {
    std::string cs = t.coeff.str();
    bool neg = false;
    if (!cs.empty() && cs[0] == '-') {
      neg = true;
      cs = cs.substr(1);
    }
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    bool coeff_is_unit = cs == "1";
    if (!coeff_is_unit || t.factors.empty()) os << cs;
    bool need_star = !coeff_is_unit && !t.factors.empty();
    for (auto& f : t.factors) {
      if (need_star) os << "*";
      need_star = true;
      os << f.var.name();
      if (!f.exp.is_one()) {
        std::string es = f.exp.str();
        bool simple = es.find_first_of("+-*/ ()^") == std::string::npos;
        os << "^" << (simple ? es : "(" + es + ")");
      }
    }
  }
  return os.str();
}

}  // namespace symmwave
