#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "drinfeld_fit.hpp"
#include "modules.hpp"
#include "nls.hpp"
#include "poisson_checks.hpp"
#include "report.hpp"
#include "rmatrix.hpp"
#include "twisted.hpp"
#include "twisted_modules.hpp"
#include "yangian.hpp"

namespace ywkit {

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"ybe", "poisson", "center", "drinfeld-fit", "twist",
                                              "fold", "super", "reps", "nls"};
  return names;
}

// Overrides narrow a suite to one case; without them each suite runs its
// default sweep.
struct SuiteConfig {
  std::vector<std::string> suites;
  std::optional<Signature> sig;
  std::optional<int> p;
  std::optional<TwistClass> theta;
  std::optional<std::vector<std::vector<Scalar>>> rep_params;
  std::optional<std::vector<Scalar>> sweep;
  std::optional<std::vector<std::vector<Scalar>>> momenta;
  int m_max = 3;
  int jobs = 1;
};

inline constexpr int kMaxLevel = 4;

namespace suite_detail {

inline Signature plain_n(const SuiteConfig& c, const std::string& suite) {
  if (c.sig && !c.sig->is_plain()) throw ConfigError(suite + " suite needs a plain signature, got " + c.sig->to_string());
  return c.sig ? *c.sig : Signature(2);
}

inline std::vector<TwistClass> theta_classes(const SuiteConfig& c, int n) {
  if (c.theta) return {*c.theta};
  std::vector<TwistClass> out{TwistClass::plus};
  if (n % 2 == 0) out.push_back(TwistClass::minus);
  return out;
}

// Exploratory records never fail a suite; the outcome sits in the payload.
inline void record(Report& rep, const Report& observed) {
  for (const auto& c : observed.checks) {
    auto payload = c.payload;
    payload["outcome"] = status_name(c.status);
    rep.add("explore/" + c.name, true, "exploratory", payload);
  }
}

// A negative control passes when the perturbed identity fails.
inline void control(Report& rep, const Report& observed) {
  for (const auto& c : observed.checks) {
    auto payload = c.payload;
    payload["outcome"] = status_name(c.status);
    rep.add("control/" + c.name, c.status == Status::fail,
            c.status == Status::fail ? "perturbed identity fails as expected" : "negative control unexpectedly passes",
            payload);
  }
}

}  // namespace suite_detail

inline Report run_ybe(const SuiteConfig& c) {
  Report rep{"ybe", {}};
  std::vector<Signature> sigs{Signature(2), Signature(3), Signature(4), Signature(1, 1), Signature(2, 1), Signature(1, 2)};
  if (c.sig) sigs = {*c.sig};
  for (const auto& sig : sigs) {
    auto r = build_rational_r(sig);
    rep.merge(check_ybe(r));
    if (sig.is_plain()) rep.merge(check_unitarity(r));
    rep.merge(check_classical_ybe(build_permutation(sig), sig));
  }
  return rep;
}

inline std::vector<std::pair<Signature, int>> poisson_cases(const SuiteConfig& c) {
  if (c.sig || c.p) return {{c.sig.value_or(Signature(2)), c.p.value_or(1)}};
  return {{Signature(2), 1}, {Signature(2), 2}, {Signature(3), 1}, {Signature(1, 1), 1}};
}

inline Report run_poisson(const SuiteConfig& c) {
  Report rep{"poisson", {}};
  for (const auto& [sig, p] : poisson_cases(c)) {
    auto alg = YangianAlgebra::truncated(sig, p);
    rep.merge(verify_antisymmetry(alg));
    rep.merge(verify_jacobi(alg, p, c.jobs));
    rep.merge(verify_truncation_ideal(sig, p, c.jobs));
    if (sig.is_plain()) rep.merge(verify_center(alg, classical_det(alg)));
  }
  return rep;
}

inline Report run_center(const SuiteConfig& c) {
  Report rep{"center", {}};
  std::vector<std::pair<int, int>> cases{{1, 2}, {2, 1}, {2, 2}};
  if (c.sig || c.p) cases = {{suite_detail::plain_n(c, "center").total(), c.p.value_or(1)}};
  for (const auto& [n, p] : cases) {
    auto alg = YangianAlgebra::truncated(Signature(n), p);
    rep.merge(verify_center(alg, classical_det(alg)));
  }
  return rep;
}

inline Report run_drinfeld_fit(const SuiteConfig& c) {
  Report rep{"drinfeld-fit", {}};
  std::vector<int> ns{3, 2};
  if (c.sig) ns = {suite_detail::plain_n(c, "drinfeld-fit").total()};
  for (int n : ns) rep.merge(fit_drinfeld_level_one(n, c.jobs));
  return rep;
}

inline std::vector<std::vector<Scalar>> default_rsrs_params(int p_max) {
  std::vector<std::vector<Scalar>> all{{0}, {rational(1, 2)}, {0, 3}, {1, rational(-5, 2)}};
  std::vector<std::vector<Scalar>> out;
  for (auto& a : all)
    if (static_cast<int>(a.size()) <= p_max) out.push_back(a);
  return out;
}

inline Report run_twist(const SuiteConfig& c) {
  Report rep{"twist", {}};
  std::vector<int> ns{2, 3};
  if (c.sig) ns = {suite_detail::plain_n(c, "twist").total()};
  const int p = c.p.value_or(1);
  for (int n : ns)
    for (auto cls : suite_detail::theta_classes(c, n)) {
      Signature sig(n);
      auto alg = YangianAlgebra::truncated(sig, p);
      auto t = build_tau(make_theta(sig, cls), p);
      auto s = build_s(alg, t);
      rep.merge(verify_tau(t, alg, c.jobs));
      rep.merge(verify_twisted_bracket(alg, t, s, 1, c.jobs));
      rep.merge(verify_s_closure(alg, t, s));
      suite_detail::control(rep, verify_twisted_bracket(alg, t, s, -1, c.jobs));
    }
  // Reflection equation on Y(2) modules, p <= 2.
  if (std::find(ns.begin(), ns.end(), 2) == ns.end()) {
    rep.skip("rsrs", "the reflection equation is checked on Y(2) modules");
    return rep;
  }
  const int p_max = c.p ? std::min(*c.p, 2) : 2;
  for (auto cls : suite_detail::theta_classes(c, 2)) {
    auto theta = make_theta(Signature(2), cls);
    for (const auto& as : default_rsrs_params(p_max)) {
      std::vector<EvaluationDatum> evs;
      for (const auto& a : as) evs.push_back({Signature(2), a});
      auto m = tensor_modules(evs);
      rep.merge(verify_rsrs(m, theta));
      rep.merge(verify_tau_on_module(m, theta));
      suite_detail::record(rep, verify_rsrs(m, theta, ReflectionPartner::q_minus));
      suite_detail::control(rep, verify_rsrs(m, theta, ReflectionPartner::p_control));
    }
  }
  return rep;
}

inline std::vector<std::tuple<int, TwistClass, int>> fold_cases(const SuiteConfig& c) {
  if (c.sig || c.p || c.theta) {
    const int n = suite_detail::plain_n(c, "fold").total();
    std::vector<std::tuple<int, TwistClass, int>> out;
    for (auto cls : suite_detail::theta_classes(c, n)) out.emplace_back(n, cls, c.p.value_or(1));
    return out;
  }
  return {{2, TwistClass::plus, 1}, {2, TwistClass::minus, 1}, {3, TwistClass::plus, 1},
          {2, TwistClass::plus, 2}, {2, TwistClass::minus, 2}};
}

inline Report run_fold(const SuiteConfig& c) {
  Report rep{"fold", {}};
  for (const auto& [n, cls, p] : fold_cases(c)) {
    auto alg = YangianAlgebra::truncated(Signature(n), p);
    rep.merge(verify_fold(alg, fold_quotient(alg, build_tau(make_theta(Signature(n), cls), p)), c.jobs));
  }
  return rep;
}

inline Report run_super(const SuiteConfig& c) {
  Report rep{"super", {}};
  const Signature sig = c.sig.value_or(Signature(1, 2));
  if (sig.is_plain()) throw ConfigError("super suite needs a super signature M|N, got " + sig.to_string());
  const int p = c.p.value_or(1);
  auto theta = make_theta(sig, c.theta.value_or(TwistClass::plus));
  // The identity itself, in the enveloping algebra (p = 1) and on modules.
  rep.merge(verify_s_symmetry_enveloping(theta, 1));
  for (int k = 1; k <= std::max(p, 2); ++k) {
    std::vector<EvaluationDatum> evs;
    for (int f = 0; f < k; ++f) evs.push_back({sig, Scalar(2 * f)});
    auto m = tensor_modules(evs);
    rep.merge(verify_rtt(m));
    rep.merge(verify_tau_on_module(m, theta));
    rep.merge(verify_s_symmetry_module(m, theta, 1));
  }
  for (int cc : {0, -1}) suite_detail::control(rep, verify_s_symmetry_enveloping(theta, cc));
  // Classical shadow: only the leading part survives the limit.
  auto alg = YangianAlgebra::truncated(sig, p);
  auto t = build_tau(theta, p);
  auto s = build_s(alg, t);
  rep.merge(verify_tau(t, alg, c.jobs));
  rep.merge(verify_s_symmetry_classical(s, t, 0));
  suite_detail::record(rep, verify_s_symmetry_classical(s, t, 1));
  return rep;
}

inline std::vector<std::vector<Scalar>> default_rep_params() {
  return {{rational(1, 2)}, {0, 5}, {rational(1, 3), 4}, {0, 2, 7}, {rational(-1, 2), 3, 9}};
}

inline Report run_reps(const SuiteConfig& c) {
  Report rep{"reps", {}};
  std::vector<Signature> sigs{Signature(2), Signature(3)};
  if (c.sig) sigs = {suite_detail::plain_n(c, "reps")};
  const int p_max = c.p.value_or(3);
  auto params = c.rep_params.value_or(default_rep_params());
  for (const auto& sig : sigs) {
    std::vector<std::vector<Scalar>> todo;
    for (const auto& as : params)
      if (static_cast<int>(as.size()) <= p_max) todo.push_back(as);
    std::vector<Report> parts(todo.size());
    parallel_for(todo.size(), c.jobs, [&](std::size_t k) {
      std::vector<EvaluationDatum> evs;
      for (const auto& a : todo[k]) evs.push_back({sig, a});
      auto m = tensor_modules(evs);
      Report r{"reps", {}};
      r.merge(verify_rtt(m));
      r.merge(verify_truncation(m));
      r.merge(verify_round_trip(evs));
      parts[k] = std::move(r);
    });
    for (const auto& r : parts) rep.merge(r);
  }
  if (p_max >= 2) {
    const Signature sweep_sig = sigs.front();
    rep.merge(verify_irreducibility_sweep(sweep_sig, c.sweep.value_or(std::vector<Scalar>{2, 3, 4, 5, 6})));
    // Degenerate points: reducible yet indecomposable, so the commutant stays scalar.
    Report degenerate{"reps", {}};
    for (const Scalar& a : {Scalar(1), Scalar(-1)}) {
      auto m = tensor_modules({{sweep_sig, 0}, {sweep_sig, a}});
      auto hw = extract_highest_weight(m);
      degenerate.add("degenerate[" + module_label(m) + "]", true, "",
                     {{"commutant_dimension", std::to_string(commutant_dimension(m))},
                      {"kernel_dimension", std::to_string(hw.kernel_dimension)},
                      {"cyclic_dimension", hw.ok ? std::to_string(cyclic_dimension(m, hw.xi)) : "n/a"}});
    }
    suite_detail::record(rep, degenerate);
  }
  return rep;
}

inline std::vector<std::vector<Scalar>> default_momenta() {
  return {{}, {7}, {0, 3}, {0, 1, 5}, {rational(1, 2), 2, -3}};
}

inline Report run_nls(const SuiteConfig& c) {
  Report rep{"nls", {}};
  const int n = suite_detail::plain_n(c, "nls").total();
  auto sectors = c.momenta.value_or(default_momenta());
  for (const auto& k : sectors) {
    if (c.p && static_cast<int>(k.size()) > *c.p) continue;
    auto sec = build_sector(k, n);
    if (sec.n() >= 2) rep.merge(verify_path_independence(sec));
    rep.merge(verify_symmetry(sec, build_charges(sec, c.m_max)));
    if (sec.n() >= 2) {
      Report perturbed = verify_symmetry(sec, build_charges(sec, c.m_max, false), false);
      perturbed.checks.erase(perturbed.checks.begin());
      suite_detail::control(rep, perturbed);
    }
    rep.merge(verify_truncation_on_sector(sec));
  }
  return rep;
}

inline bool needs_plain(const std::string& suite) {
  return suite == "center" || suite == "drinfeld-fit" || suite == "twist" || suite == "fold" || suite == "reps" ||
         suite == "nls";
}

// Throws ConfigError for inputs that violate a structural constraint, before
// any computation starts. Overrides (sig, p, theta) apply to named suites;
// "all" runs every default sweep and rejects them.
inline void validate_config(const SuiteConfig& c) {
  if (c.suites.empty()) throw ConfigError("empty suite list");
  const bool all = std::find(c.suites.begin(), c.suites.end(), "all") != c.suites.end();
  for (const auto& s : c.suites)
    if (s != "all" && std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
      throw ConfigError("unknown suite '" + s + "'");
  if (all && (c.sig || c.p || c.theta)) throw ConfigError("--sig, --p and --theta need a named suite, not 'all'");
  if (c.p && (*c.p < 1 || *c.p > kMaxLevel))
    throw ConfigError("p must be between 1 and " + std::to_string(kMaxLevel));
  if (c.jobs < 1) throw ConfigError("jobs must be positive");
  if (c.m_max < 0 || c.m_max > 8) throw ConfigError("m_max must be between 0 and 8");
  if (c.sig && c.sig->total() > 6) throw ConfigError("signature too large for exact desk-scale checks");
  for (const auto& s : c.suites) {
    if (c.sig && !c.sig->is_plain() && needs_plain(s))
      throw ConfigError(s + " suite needs a plain signature, got " + c.sig->to_string());
    if (c.sig && c.sig->is_plain() && s == "super")
      throw ConfigError("super suite needs a super signature M|N, got " + c.sig->to_string());
    if (c.sig && s == "drinfeld-fit" && c.sig->total() != 2 && c.sig->total() != 3)
      throw ConfigError("drinfeld-fit is defined for N = 2 or N = 3");
    try {
      if (s == "twist" || s == "fold") {
        const int n = c.sig ? c.sig->total() : 2;
        for (auto cls : suite_detail::theta_classes(c, n)) {
          auto theta = make_theta(Signature(n), cls);
          if (s == "fold") validate_fold(build_tau(theta, c.p.value_or(1)));
        }
      }
      if (s == "super") make_theta(c.sig.value_or(Signature(1, 2)), c.theta.value_or(TwistClass::plus));
    } catch (const TwistError& e) {
      throw ConfigError(e.what());
    }
  }
  if (c.momenta)
    for (const auto& k : *c.momenta) try {
        build_sector(k, 1);
      } catch (const NlsError& e) {
        throw ConfigError(e.what());
      }
  if (c.rep_params)
    for (const auto& as : *c.rep_params)
      if (as.empty() || static_cast<int>(as.size()) > kMaxLevel)
        throw ConfigError("evaluation parameter lists need 1 to " + std::to_string(kMaxLevel) + " entries");
}

inline Report run_one(const std::string& name, const SuiteConfig& c) {
  if (name == "ybe") return run_ybe(c);
  if (name == "poisson") return run_poisson(c);
  if (name == "center") return run_center(c);
  if (name == "drinfeld-fit") return run_drinfeld_fit(c);
  if (name == "twist") return run_twist(c);
  if (name == "fold") return run_fold(c);
  if (name == "super") return run_super(c);
  if (name == "reps") return run_reps(c);
  if (name == "nls") return run_nls(c);
  throw ConfigError("unknown suite '" + name + "'");
}

// Suites in canonical order, "all" expanded; checks sorted by name.
inline std::vector<Report> run_suites(const SuiteConfig& c) {
  validate_config(c);
  std::vector<std::string> names;
  for (const auto& s : c.suites) {
    if (s == "all") {
      names = suite_names();
      break;
    }
    if (std::find(names.begin(), names.end(), s) == names.end()) names.push_back(s);
  }
  std::vector<Report> out;
  for (const auto& n : names) {
    Report r = run_one(n, c);
    r.suite = n;
    r.sort();
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace ywkit
