#include "symmwave/poly.hpp"

#include <algorithm>
#include <sstream>

namespace symmwave {

Rat parse_rat(const std::string& s) {
  std::string t;
  for (char ch : s)
    if (!isspace(static_cast<unsigned char>(ch))) t += ch;
  if (t.empty()) fail("SyntaxError", "empty rational");
  auto dot = t.find('.');
  try {
    if (dot != std::string::npos) {
      std::string digits = t.substr(0, dot) + t.substr(dot + 1);
      size_t frac_len = t.size() - dot - 1;
      Rat q(mpz_class(digits), mpz_class(1));
      for (size_t i = 0; i < frac_len; ++i) q /= 10;
      q.canonicalize();
      return q;
    }
    Rat q(t);
    q.canonicalize();
    if (q.get_den() == 0) fail("SyntaxError", "zero denominator in rational " + s);
    return q;
  } catch (const std::invalid_argument&) {
    fail("SyntaxError", "bad rational literal '" + s + "'");
  }
}

std::string rat_str(const Rat& q) { return q.get_str(); }

const char* param_name(Param p) {
  static const char* names[kNumParams] = {"a", "b", "c", "p", "n"};
  return names[static_cast<int>(p)];
}

std::optional<Param> param_from_name(const std::string& s) {
  for (int i = 0; i < kNumParams; ++i)
    if (s == param_name(static_cast<Param>(i))) return static_cast<Param>(i);
  return std::nullopt;
}

int mono_total_degree(const Mono& m) {
  int d = 0;
  for (int e : m) d += e;
  return d;
}

int mono_cmp(const Mono& x, const Mono& y) {
  int dx = mono_total_degree(x), dy = mono_total_degree(y);
  if (dx != dy) return dx < dy ? -1 : 1;
  for (int i = 0; i < kNumParams; ++i)
    if (x[i] != y[i]) return x[i] < y[i] ? -1 : 1;
  return 0;
}

Poly::Poly(const Rat& c) {
  if (c != 0) terms_.push_back({Mono{}, c});
}

Poly Poly::var(Param p, int exp) {
  Poly r;
  if (exp < 0) fail("Internal", "Poly::var negative exponent");
  Mono m{};
  m[static_cast<int>(p)] = static_cast<int16_t>(exp);
  r.terms_.push_back({m, Rat(1)});
  return r;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && mono_total_degree(terms_[0].first) == 0);
}

const Rat& Poly::constant_value() const {
  static const Rat zero(0);
  if (terms_.empty()) return zero;
  return terms_[0].second;
}

int Poly::degree(Param v) const {
  int d = 0;
  for (auto& t : terms_) d = std::max<int>(d, t.first[static_cast<int>(v)]);
  return d;
}

int Poly::total_degree() const {
  int d = 0;
  for (auto& t : terms_) d = std::max(d, mono_total_degree(t.first));
  return d;
}

bool Poly::depends_on(Param v) const { return degree(v) > 0; }

void Poly::normalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const auto& x, const auto& y) { return mono_cmp(x.first, y.first) > 0; });
  std::vector<std::pair<Mono, Rat>> out;
  for (auto& t : terms_) {
    if (!out.empty() && out.back().first == t.first)
      out.back().second += t.second;
    else
      out.push_back(t);
    if (!out.empty() && out.back().second == 0) out.pop_back();
  }
  terms_ = std::move(out);
}

Poly Poly::from_terms(std::vector<std::pair<Mono, Rat>> ts) {
  Poly r;
  r.terms_ = std::move(ts);
  r.normalize();
  return r;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  // merge two sorted term lists
  std::vector<std::pair<Mono, Rat>> out;
  out.reserve(terms_.size() + o.terms_.size());
  size_t i = 0, j = 0;
  while (i < terms_.size() && j < o.terms_.size()) {
    int c = mono_cmp(terms_[i].first, o.terms_[j].first);
    if (c > 0)
      out.push_back(terms_[i++]);
    else if (c < 0)
      out.push_back(o.terms_[j++]);
    else {
      Rat s = terms_[i].second + o.terms_[j].second;
      if (s != 0) out.push_back({terms_[i].first, s});
      ++i, ++j;
    }
  }
  for (; i < terms_.size(); ++i) out.push_back(terms_[i]);
  for (; j < o.terms_.size(); ++j) out.push_back(o.terms_[j]);
  terms_ = std::move(out);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) { return *this += -o; }

Poly operator*(const Poly& x, const Poly& y) {
  std::vector<std::pair<Mono, Rat>> ts;
  ts.reserve(x.terms_.size() * y.terms_.size());
  for (auto& tx : x.terms_)
    for (auto& ty : y.terms_) {
      Mono m;
      for (int i = 0; i < kNumParams; ++i)
        m[i] = static_cast<int16_t>(tx.first[i] + ty.first[i]);
      ts.push_back({m, tx.second * ty.second});
    }
  return Poly::from_terms(std::move(ts));
}

Poly Poly::pow(unsigned e) const {
  Poly r{Rat(1)};
  Poly base = *this;
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

int Poly::cmp(const Poly& o) const {
  size_t k = std::min(terms_.size(), o.terms_.size());
  for (size_t i = 0; i < k; ++i) {
    int c = mono_cmp(terms_[i].first, o.terms_[i].first);
    if (c != 0) return c;
    int cc = ::cmp(terms_[i].second, o.terms_[i].second);
    if (cc != 0) return cc < 0 ? -1 : 1;
  }
  if (terms_.size() != o.terms_.size()) return terms_.size() < o.terms_.size() ? -1 : 1;
  return 0;
}

Rat Poly::eval(const ParamPoint& pt) const {
  Rat acc(0);
  for (auto& t : terms_) {
    Rat v = t.second;
    for (int i = 0; i < kNumParams; ++i)
      for (int e = 0; e < t.first[i]; ++e) v *= pt[i];
    acc += v;
  }
  return acc;
}

const Mono& Poly::lead_mono() const {
  if (terms_.empty()) fail("Internal", "lead_mono of zero polynomial");
  return terms_[0].first;
}

const Rat& Poly::lead_coeff() const {
  if (terms_.empty()) fail("Internal", "lead_coeff of zero polynomial");
  return terms_[0].second;
}

Rat Poly::make_primitive() {
  if (terms_.empty()) return Rat(1);
  mpz_class num_gcd(0), den_lcm(1);
  for (auto& t : terms_) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.second.get_num().get_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.second.get_den().get_mpz_t());
  }
  Rat factor(num_gcd, den_lcm);
  factor.canonicalize();
  if (terms_[0].second < 0) factor = -factor;
  for (auto& t : terms_) {
    t.second /= factor;
    t.second.canonicalize();
  }
  return factor;
}

Poly Poly::coeff_of(Param v, int k) const {
  int iv = static_cast<int>(v);
  std::vector<std::pair<Mono, Rat>> ts;
  for (auto& t : terms_)
    if (t.first[iv] == k) {
      Mono m = t.first;
      m[iv] = 0;
      ts.push_back({m, t.second});
    }
  return from_terms(std::move(ts));
}

bool Poly::try_divide_exact(const Poly& d, Poly& out) const {
  if (d.is_zero()) fail("Internal", "division by zero polynomial");
  Poly rem = *this;
  std::vector<std::pair<Mono, Rat>> q;
  while (!rem.is_zero()) {
    const Mono& lr = rem.lead_mono();
    const Mono& ld = d.lead_mono();
    Mono m;
    for (int i = 0; i < kNumParams; ++i) {
      int e = lr[i] - ld[i];
      if (e < 0) return false;
      m[i] = static_cast<int16_t>(e);
    }
    Rat c = rem.lead_coeff() / d.lead_coeff();
    c.canonicalize();
    q.push_back({m, c});
    Poly piece = from_terms({{m, c}});
    rem -= piece * d;
  }
  out = from_terms(std::move(q));
  return true;
}

Poly Poly::divide_exact(const Poly& d) const {
  Poly out;
  if (!try_divide_exact(d, out)) fail("Internal", "inexact polynomial division");
  return out;
}

namespace {

// pseudo-remainder of F by G with respect to v (up to a unit; callers
// re-extract content afterwards)
Poly prem(Poly F, const Poly& G, Param v) {
  int dg = G.degree(v);
  Poly lg = G.coeff_of(v, dg);
  while (!F.is_zero() && F.degree(v) >= dg) {
    int df = F.degree(v);
    Poly lf = F.coeff_of(v, df);
    // F <- lg*F - lf*v^(df-dg)*G
    F = lg * F - lf * Poly::var(v, df - dg) * G;
  }
  return F;
}

Poly content_wrt(const Poly& A, Param v) {
  Poly c;
  for (int k = A.degree(v); k >= 0; --k) {
    Poly co = A.coeff_of(v, k);
    if (!co.is_zero()) c = Poly::gcd(c, co);
    if (c.is_constant() && !c.is_zero()) break;
  }
  return c;
}

}  // namespace

Poly Poly::gcd(const Poly& x, const Poly& y) {
  Poly A = x, B = y;
  A.make_primitive();
  B.make_primitive();
  if (A.is_zero()) return B;
  if (B.is_zero()) return A;
  if (A.is_constant() || B.is_constant()) return Poly{Rat(1)};

  // single-monomial fast path
  if (A.num_terms() == 1 && B.num_terms() == 1) {
    Mono m;
    for (int i = 0; i < kNumParams; ++i)
      m[i] = std::min(A.lead_mono()[i], B.lead_mono()[i]);
    return from_terms({{m, Rat(1)}});
  }

  // main variable: first parameter occurring in both
  std::optional<Param> main;
  for (int i = 0; i < kNumParams; ++i) {
    Param v = static_cast<Param>(i);
    if (A.depends_on(v) && B.depends_on(v)) {
      main = v;
      break;
    }
  }
  if (!main) {
    // no shared variable beyond constants: check the vars of one side against
    // the content of the other
    for (int i = 0; i < kNumParams; ++i) {
      Param v = static_cast<Param>(i);
      if (A.depends_on(v)) return gcd(content_wrt(A, v), B);
      if (B.depends_on(v)) return gcd(A, content_wrt(B, v));
    }
    return Poly{Rat(1)};
  }
  Param v = *main;

  Poly ca = content_wrt(A, v), cb = content_wrt(B, v);
  Poly pa = A.divide_exact(ca), pb = B.divide_exact(cb);
  Poly cg = gcd(ca, cb);

  if (pa.degree(v) < pb.degree(v)) std::swap(pa, pb);
  while (!pb.is_zero()) {
    Poly r = prem(pa, pb, v);
    pa = std::move(pb);
    if (r.is_zero()) {
      pb = Poly();
    } else {
      Poly cr = content_wrt(r, v);
      pb = r.divide_exact(cr);
      pb.make_primitive();
    }
  }
  if (pa.degree(v) == 0) pa = Poly{Rat(1)};
  Poly g = cg * pa;
  g.make_primitive();
  return g;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& t : terms_) {
    Rat c = t.second;
    if (first) {
      if (c < 0) {
        os << "-";
        c = -c;
      }
    } else {
      os << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    }
    first = false;
    bool has_vars = mono_total_degree(t.first) > 0;
    if (c != 1 || !has_vars) {
      os << rat_str(c);
      if (has_vars) os << "*";
    }
    bool fv = true;
    for (int i = 0; i < kNumParams; ++i) {
      if (t.first[i] == 0) continue;
      if (!fv) os << "*";
      fv = false;
      os << param_name(static_cast<Param>(i));
      if (t.first[i] > 1) os << "^" << t.first[i];
    }
  }
  return os.str();
}

}  // namespace symmwave
