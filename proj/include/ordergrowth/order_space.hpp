#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "ordergrowth/gamma.hpp"

namespace og {

enum class TriState { yes, no, unknown };

struct DominanceResult {
  TriState state = TriState::unknown;
  long long budget_used = 0;
  std::string detail;
};

// Dominance is semi-decidable: yes needs a witness power per probe, no needs
// g < e or g = e, anything else is unknown with the budget reported.
template <class Element>
DominanceResult is_dominant(const GroupModel<Element>& model, const Element& g,
                            const std::vector<Element>& probes, long long n_cap) {
  if (probes.empty()) throw DomainError("is_dominant: probes must be non-empty");
  if (n_cap < 1) throw DomainError("is_dominant: n_cap must be positive");
  if (!model.leq(model.identity, g)) return {TriState::no, 0, "g is not >= e"};
  if (model.equal(g, model.identity)) return {TriState::no, 0, "g = e"};
  long long budget = 0;
  for (const Element& h : probes) {
    bool dominated = false;
    long long n = 1;
    while (true) {
      budget = std::max(budget, n);
      try {
        if (model.leq(h, model.power(g, n))) {
          dominated = true;
          break;
        }
      } catch (const BudgetExceeded&) {
        break;  // power overflow: cannot certify this probe
      }
      if (n >= n_cap) break;
      n = n <= n_cap / 2 ? n * 2 : n_cap;  // doubling, then the cap itself
    }
    if (!dominated) return {TriState::unknown, n_cap, "probe not dominated within n_cap"};
  }
  return {TriState::yes, budget, ""};
}

// log max{gamma(g,h), gamma(h,g)} with the interval propagated from both
// growth brackets (max and log are monotone, so ends map to ends).
template <class Element>
GrowthEstimate order_distance(const GroupModel<Element>& model, const Element& g, const Element& h,
                              long long n_max, const GammaOptions& opts = {}) {
  const GrowthEstimate a = relative_growth(model, g, h, n_max, opts).estimate;
  const GrowthEstimate b = relative_growth(model, h, g, n_max, opts).estimate;
  if (!(a.lower > 0) || !(b.lower > 0))
    throw DomainError("order_distance: a growth bracket has nonpositive lower end, log undefined");
  GrowthEstimate d;
  d.value = std::log(std::max(a.value, b.value));
  d.lower = std::log(std::max(a.lower, b.lower));
  d.upper = std::log(std::max(a.upper, b.upper));
  d.n_used = n_max;
  d.certified = a.certified && b.certified;
  return d;
}

struct AxiomReport {
  long long trials = 0;
  long long uncertain = 0;  // comparisons the oracle declined to resolve
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Samples reflexivity, antisymmetry, transitivity and bi-invariance on the
// given sample set. UncertainOrder outcomes are counted, not treated as
// violations (they are refusals, not wrong answers).
template <class Element>
AxiomReport check_order_axioms(const GroupModel<Element>& model, const std::vector<Element>& sample,
                               long long trials, unsigned long long seed = 12345) {
  if (sample.empty()) throw DomainError("check_order_axioms: sample must be non-empty");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<size_t> pick(0, sample.size() - 1);
  AxiomReport rep;
  rep.trials = trials;
  auto note = [&rep](const std::string& msg) {
    if (rep.violations.size() < 50) rep.violations.push_back(msg);
  };

  for (size_t i = 0; i < sample.size(); ++i) {
    try {
      if (!model.leq(sample[i], sample[i])) note("reflexivity fails at sample " + std::to_string(i));
    } catch (const UncertainOrder&) {
      ++rep.uncertain;
    }
  }

  for (long long t = 0; t < trials; ++t) {
    const Element& a = sample[pick(rng)];
    const Element& b = sample[pick(rng)];
    const Element& c = sample[pick(rng)];
    const Element& k = sample[pick(rng)];
    try {
      const bool ab = model.leq(a, b);
      if (ab && model.leq(b, a) && !model.equal(a, b)) note("antisymmetry fails (a <= b <= a, a != b)");
      if (ab && model.leq(b, c) && !model.leq(a, c)) note("transitivity fails");
      if (ab) {
        if (!model.leq(model.multiply(k, a), model.multiply(k, b))) note("left invariance fails");
        if (!model.leq(model.multiply(a, k), model.multiply(b, k))) note("right invariance fails");
      }
    } catch (const UncertainOrder&) {
      ++rep.uncertain;
    }
  }
  return rep;
}

// Max over pairs of | d(g,h) - |log f(g) - log f(h)| |: zero iff the metric
// embedding through f is an isometry on the listed dominants.
template <class Element>
double verify_collapse(const GroupModel<Element>& model, const Quasimorphism<Element>& f,
                       const std::vector<Element>& dominants, long long n_max) {
  if (dominants.size() < 2) throw DomainError("verify_collapse: need at least two dominants");
  double worst = 0.0;
  for (size_t i = 0; i < dominants.size(); ++i)
    for (size_t j = i + 1; j < dominants.size(); ++j) {
      const GrowthEstimate d = order_distance(model, dominants[i], dominants[j], n_max);
      const double predicted = std::abs(std::log(f.eval(dominants[i])) - std::log(f.eval(dominants[j])));
      worst = std::max(worst, std::abs(d.value - predicted));
    }
  return worst;
}

}  // namespace og
