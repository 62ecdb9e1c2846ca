#include "symmwave/linsolve.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace symmwave {

namespace {

std::string term_key(const Term& t, int tag = 0) {
  std::ostringstream os;
  os << tag << "|";
  for (auto& f : t.factors) os << f.var.sort_key() << "^" << f.exp.str() << ".";
  return os.str();
}

void accumulate(std::map<std::string, std::vector<std::pair<size_t, ParamScalar>>>& rows,
                std::map<std::string, ParamScalar>& rhs, const Expr& e, size_t col,
                bool is_rhs, int tag) {
  for (auto& t : e.terms()) {
    std::string key = term_key(t, tag);
    if (is_rhs) {
      auto [it, fresh] = rhs.emplace(key, t.coeff);
      if (!fresh) it->second += t.coeff;
    } else {
      rows[key].push_back({col, t.coeff});
    }
    if (!is_rhs) rhs.emplace(key, ParamScalar(0));
  }
}

// A column owning a term key that no other live column shares, with a zero
// right-hand side there, is forced to zero; dropping such columns (to a fixed
// point) keeps the dense elimination small for generous candidate pools.
std::vector<bool> prune_columns(
    const std::map<std::string, std::vector<std::pair<size_t, ParamScalar>>>& rows,
    const std::map<std::string, ParamScalar>& rhs, size_t ncols) {
  std::vector<bool> alive(ncols, true);
  std::vector<std::vector<const std::string*>> keys_of(ncols);
  for (auto& [key, entries] : rows)
    for (auto& [col, coeff] : entries)
      if (!coeff.is_zero()) keys_of[col].push_back(&key);
  bool changed = true;
  while (changed) {
    changed = false;
    std::map<std::string, int> live_count;
    for (size_t j = 0; j < ncols; ++j)
      if (alive[j])
        for (auto* k : keys_of[j]) live_count[*k] += 1;
    for (size_t j = 0; j < ncols; ++j) {
      if (!alive[j]) continue;
      for (auto* k : keys_of[j]) {
        auto it = rhs.find(*k);
        bool rhs_zero = it == rhs.end() || it->second.is_zero();
        if (live_count[*k] == 1 && rhs_zero) {
          alive[j] = false;
          changed = true;
          break;
        }
      }
    }
  }
  return alive;
}

std::optional<std::vector<ParamScalar>> solve_rows(
    const std::map<std::string, std::vector<std::pair<size_t, ParamScalar>>>& rows,
    const std::map<std::string, ParamScalar>& rhs, size_t ncols) {
  std::vector<bool> alive = prune_columns(rows, rhs, ncols);
  std::vector<size_t> col_index(ncols, SIZE_MAX);
  size_t nlive = 0;
  for (size_t j = 0; j < ncols; ++j)
    if (alive[j]) col_index[j] = nlive++;

  // dense assembly over the surviving columns
  std::vector<std::vector<ParamScalar>> A;
  std::vector<ParamScalar> b;
  std::set<std::string> keys;
  for (auto& [k, v] : rows) keys.insert(k);
  for (auto& [k, v] : rhs) keys.insert(k);
  for (auto& k : keys) {
    std::vector<ParamScalar> row(nlive, ParamScalar(0));
    bool nontrivial = false;
    auto it = rows.find(k);
    if (it != rows.end())
      for (auto& [col, c] : it->second)
        if (alive[col]) {
          row[col_index[col]] += c;
          nontrivial = true;
        }
    auto ir = rhs.find(k);
    ParamScalar rv = ir != rhs.end() ? ir->second : ParamScalar(0);
    if (!nontrivial && rv.is_zero()) continue;
    A.push_back(std::move(row));
    b.push_back(rv);
  }

  size_t nrows = A.size();
  std::vector<long> pivot_of_col(nlive, -1);
  size_t rank = 0;
  for (size_t col = 0; col < nlive && rank < nrows; ++col) {
    // pick the structurally simplest pivot to limit coefficient growth
    long best = -1;
    long best_score = 0;
    for (size_t r = rank; r < nrows; ++r) {
      if (A[r][col].is_zero()) continue;
      long score = static_cast<long>(A[r][col].num().num_terms() +
                                     A[r][col].den().num_terms());
      if (A[r][col].is_constant()) score = 1;
      if (best < 0 || score < best_score) {
        best = static_cast<long>(r);
        best_score = score;
      }
    }
    if (best < 0) continue;  // free column
    std::swap(A[rank], A[static_cast<size_t>(best)]);
    std::swap(b[rank], b[static_cast<size_t>(best)]);
    ParamScalar inv = A[rank][col].inverse();
    for (size_t j = col; j < nlive; ++j) A[rank][j] *= inv;
    b[rank] *= inv;
    for (size_t r = 0; r < nrows; ++r) {
      if (r == rank || A[r][col].is_zero()) continue;
      ParamScalar f = A[r][col];
      for (size_t j = col; j < nlive; ++j) A[r][j] -= f * A[rank][j];
      b[r] -= f * b[rank];
    }
    pivot_of_col[col] = static_cast<long>(rank);
    ++rank;
  }
  // consistency of the remaining rows
  for (size_t r = rank; r < nrows; ++r)
    if (!b[r].is_zero()) return std::nullopt;

  std::vector<ParamScalar> x(ncols, ParamScalar(0));
  for (size_t col = 0; col < ncols; ++col)
    if (alive[col] && pivot_of_col[col_index[col]] >= 0)
      x[col] = b[static_cast<size_t>(pivot_of_col[col_index[col]])];
  return x;
}

}  // namespace

std::optional<std::vector<ParamScalar>> match_linear(const std::vector<Expr>& columns,
                                                     const Expr& target) {
  std::map<std::string, std::vector<std::pair<size_t, ParamScalar>>> rows;
  std::map<std::string, ParamScalar> rhs;
  for (size_t j = 0; j < columns.size(); ++j) accumulate(rows, rhs, columns[j], j, false, 0);
  accumulate(rows, rhs, target, 0, true, 0);
  return solve_rows(rows, rhs, columns.size());
}

std::optional<std::vector<ParamScalar>> match_linear_offshell(
    const std::vector<OffShell>& columns, const OffShell& target) {
  std::map<std::string, std::vector<std::pair<size_t, ParamScalar>>> rows;
  std::map<std::string, ParamScalar> rhs;
  for (size_t j = 0; j < columns.size(); ++j) {
    accumulate(rows, rhs, columns[j].utt, j, false, 1);
    accumulate(rows, rhs, columns[j].rest, j, false, 0);
  }
  accumulate(rows, rhs, target.utt, 0, true, 1);
  accumulate(rows, rhs, target.rest, 0, true, 0);
  return solve_rows(rows, rhs, columns.size());
}

Term antiderivative_term(const Term& t, VarId var) {
  Term out;
  out.coeff = ParamScalar(1);
  bool bumped = false;
  for (auto& f : t.factors) {
    if (f.var == var) {
      bumped = true;
      auto e = f.exp.as_long();
      if (e && *e == -1) {
        out.factors.push_back(Factor{VarId::log_of(var), ParamScalar(1)});
      } else {
        out.factors.push_back(Factor{var, f.exp + ParamScalar(1)});
      }
    } else {
      out.factors.push_back(f);
    }
  }
  if (!bumped) out.factors.push_back(Factor{var, ParamScalar(1)});
  return out;
}

std::vector<Term> support_candidates(const std::vector<Expr>& seeds,
                                     const SupportOptions& opt) {
  std::vector<VarId> bump_vars;
  if (opt.allow_t) bump_vars.push_back(VarId::t());
  bump_vars.push_back(VarId::r());
  if (opt.allow_u) bump_vars.push_back(VarId::u());
  if (opt.allow_ut) bump_vars.push_back(VarId::ut());
  if (opt.allow_ur) bump_vars.push_back(VarId::ur());

  auto allowed = [&](const Term& t) {
    for (auto& f : t.factors) {
      VarId v = f.var.is_log() ? f.var.log_base() : f.var;
      if (v.kind == VarId::kLam) return false;
      if (v.kind == VarId::kT && !opt.allow_t) return false;
      if (v.is_jet()) {
        if (v.jet_order() > 1) return false;
        if (v == VarId::u() && !opt.allow_u) return false;
        if (v == VarId::ut() && !opt.allow_ut) return false;
        if (v == VarId::ur() && !opt.allow_ur) return false;
      }
    }
    return true;
  };

  std::map<std::string, Term> pool;
  // each log-bearing candidate also enters with reduced log powers: the
  // integration-by-parts ladder of x^e ln(x)^k
  std::function<void(Term)> add = [&](Term t) {
    t.coeff = ParamScalar(1);
    std::sort(t.factors.begin(), t.factors.end(),
              [](const Factor& a, const Factor& b) { return a.var < b.var; });
    if (!allowed(t)) return;
    std::ostringstream os;
    for (auto& f : t.factors) os << f.var.sort_key() << "^" << f.exp.str() << ".";
    if (!pool.emplace(os.str(), t).second) return;
    for (size_t i = 0; i < t.factors.size(); ++i) {
      if (!t.factors[i].var.is_log()) continue;
      Term down = t;
      long k = *down.factors[i].exp.as_long();
      if (k <= 1)
        down.factors.erase(down.factors.begin() + static_cast<long>(i));
      else
        down.factors[i].exp = ParamScalar(k - 1);
      add(down);
    }
  };

  // strip one power of `from` and take the antiderivative of the remainder
  // with respect to `to`: the shape a candidate must have when the seed
  // monomial arose from the `from`-chain of a total derivative
  auto traded = [&](const Term& t, VarId from, VarId to) -> std::optional<Term> {
    Term rest;
    rest.coeff = ParamScalar(1);
    bool found = false;
    for (auto& f : t.factors) {
      if (f.var == from && !found) {
        found = true;
        ParamScalar e = f.exp - ParamScalar(1);
        if (!e.is_zero()) rest.factors.push_back(Factor{from, e});
      } else {
        rest.factors.push_back(f);
      }
    }
    if (!found) return std::nullopt;
    return antiderivative_term(rest, to);
  };

  // seed monomials: strip factors outside the allowed variable set (their
  // residues still carry the shape information the antiderivative guesses need)
  auto strip = [&](const Term& t) {
    Term c;
    c.coeff = ParamScalar(1);
    for (auto& f : t.factors) {
      VarId v = f.var.is_log() ? f.var.log_base() : f.var;
      if (v.kind == VarId::kLam) continue;
      if (v.kind == VarId::kT && !opt.allow_t) continue;
      if (v.is_jet()) {
        if (v == VarId::u() && !opt.allow_u) continue;
        if (v == VarId::ut() && !opt.allow_ut) continue;
        if (v == VarId::ur() && !opt.allow_ur) continue;
      }
      c.factors.push_back(f);
    }
    return c;
  };

  // inverse images of the total-derivative chains: D_t A picks up A_t,
  // u_t A_u, u_tt A_ut, u_tr A_ur; D_r B picks up B_r, u_r B_u, u_rr B_ur,
  // u_tr B_ut -- each clause suggests one antiderivative shape
  const std::vector<std::pair<VarId, VarId>> trades = {
      {VarId::utr(), VarId::ut()}, {VarId::utr(), VarId::ur()},
      {VarId::urr(), VarId::ur()}, {VarId::ut(), VarId::u()},
      {VarId::ur(), VarId::u()},   {VarId::ut(), VarId::ur()},
      {VarId::ur(), VarId::ut()}};

  std::vector<Term> frontier;
  for (auto& s : seeds)
    for (auto& t : s.terms()) frontier.push_back(strip(t));

  for (int round = 0; round <= opt.depth && pool.size() < opt.cap; ++round) {
    std::vector<Term> next;
    for (auto& t : frontier) {
      if (pool.size() >= opt.cap) break;
      add(t);
      if (round == opt.depth) continue;
      for (VarId v : bump_vars) next.push_back(antiderivative_term(t, v));
      for (auto [from, to] : trades)
        if (auto tr = traded(t, from, to)) next.push_back(*tr);
    }
    frontier = std::move(next);
  }

  std::vector<Term> out;
  out.reserve(pool.size());
  for (auto& [k, t] : pool) out.push_back(t);
  return out;
}

}  // namespace symmwave
