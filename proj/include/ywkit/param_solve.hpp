#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "matrix.hpp"
#include "poly.hpp"
#include "superpoly.hpp"

namespace ywkit {

// Splits x into {T-monomial -> coefficient polynomial in the fit parameters}.
inline std::map<Monomial, SuperPoly> split_parameters(const SuperPoly& x) {
  std::map<Monomial, SuperPoly> out;
  for (const auto& [m, c] : x.terms()) {
    Monomial params, rest;
    for (const auto& g : m) (g.is_parameter() ? params : rest).push_back(g);
    out[rest].add_word(params, c);
  }
  for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

inline std::set<int> parameters_in(const SuperPoly& x) {
  std::set<int> out;
  for (const auto& [m, c] : x.terms())
    for (const auto& g : m)
      if (g.is_parameter()) out.insert(g.row);
  return out;
}

struct ParameterSolution {
  std::map<int, Scalar> values;
  std::set<int> free;  // undetermined parameters, set to zero in `values`
  int branches_tried = 0;
};

struct SolveOutcome {
  std::optional<ParameterSolution> solution;
  std::string failure;  // reason when no solution was found
  SuperPoly residual;   // an equation that could not be satisfied
};

namespace detail {

inline SuperPoly apply_subst(const SuperPoly& x, const std::map<int, SuperPoly>& subst) {
  return substitute(x, [&](const Gen& g) {
    if (g.is_parameter()) {
      auto it = subst.find(g.row);
      if (it != subst.end()) return it->second;
    }
    return SuperPoly::generator(g);
  });
}

inline void bind_parameter(std::map<int, SuperPoly>& subst, int var, const SuperPoly& value) {
  std::map<int, SuperPoly> one;
  one.emplace(var, value);
  for (auto& [k, v] : subst) v = apply_subst(v, one);
  subst[var] = value;
}

inline SolveOutcome solve(std::vector<SuperPoly> eqs, std::map<int, SuperPoly> subst, const std::set<int>& all,
                          int& branches) {
  for (;;) {
    std::vector<SuperPoly> live;
    std::set<std::string> seen;
    for (auto& e : eqs) {
      SuperPoly r = apply_subst(e, subst);
      if (r.is_zero()) continue;
      if (r.degree() == 0) return {std::nullopt, "inconsistent equation", r};
      if (seen.insert(r.to_string()).second) live.push_back(r);
    }
    eqs = live;
    if (eqs.empty()) {
      ParameterSolution sol;
      std::map<int, SuperPoly> zero;
      for (int p : all)
        if (!subst.count(p)) {
          sol.free.insert(p);
          zero[p] = SuperPoly();
        }
      for (int p : all) {
        SuperPoly v = subst.count(p) ? apply_subst(subst.at(p), zero) : SuperPoly();
        sol.values[p] = v.constant_term();
      }
      sol.branches_tried = branches;
      return {sol, {}, {}};
    }

    // Linear stage.
    std::vector<const SuperPoly*> linear;
    for (const auto& e : eqs)
      if (e.degree() <= 1) linear.push_back(&e);
    if (!linear.empty()) {
      std::set<int> vars;
      for (auto* e : linear)
        for (int v : parameters_in(*e)) vars.insert(v);
      std::vector<int> order(vars.begin(), vars.end());
      std::map<int, int> col;
      for (std::size_t k = 0; k < order.size(); ++k) col[order[k]] = static_cast<int>(k);
      const int nv = static_cast<int>(order.size());
      std::vector<std::vector<Scalar>> rows;
      for (auto* e : linear) {
        std::vector<Scalar> row(nv + 1);
        for (const auto& [m, c] : e->terms()) {
          if (m.empty()) {
            row[nv] -= c;
          } else {
            row[col[m[0].row]] += c;
          }
        }
        rows.push_back(std::move(row));
      }
      auto pivots = rref(rows, nv + 1);
      if (!pivots.empty() && pivots.back() == nv)
        return {std::nullopt, "inconsistent linear system", *linear.front()};
      for (std::size_t r = 0; r < pivots.size(); ++r) {
        SuperPoly value(rows[r][nv]);
        for (int c = 0; c < nv; ++c)
          if (c != pivots[r] && !is_zero(rows[r][c])) value -= SuperPoly::generator(parameter_gen(order[c])) * rows[r][c];
        bind_parameter(subst, order[pivots[r]], value);
      }
      continue;
    }

    // Univariate stage: branch over rational roots.
    for (const auto& e : eqs) {
      auto vars = parameters_in(e);
      if (vars.size() != 1) continue;
      const int var = *vars.begin();
      std::vector<Scalar> coeffs(e.degree() + 1);
      for (const auto& [m, c] : e.terms()) coeffs[m.size()] += c;
      auto roots = rational_roots(UPoly(coeffs));
      if (roots.roots.empty()) return {std::nullopt, "univariate equation without rational roots", e};
      std::set<Scalar> distinct(roots.roots.begin(), roots.roots.end());
      SolveOutcome last{std::nullopt, "no branch succeeded", e};
      for (const auto& root : distinct) {
        ++branches;
        auto branch = subst;
        bind_parameter(branch, var, SuperPoly(root));
        auto out = solve(eqs, branch, all, branches);
        if (out.solution) return out;
        last = out;
      }
      return last;
    }
    return {std::nullopt, "nonlinear multivariate system", eqs.front()};
  }
}

}  // namespace detail

// Solves a polynomial system in parameter generators: linear equations by
// elimination, then univariate equations by rational-root branching.
inline SolveOutcome solve_parameter_system(const std::vector<SuperPoly>& eqs, const std::set<int>& params) {
  int branches = 0;
  return detail::solve(eqs, {}, params, branches);
}

}  // namespace ywkit
