#pragma once

#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "ordergrowth/group_model.hpp"

namespace og {

template <class Element>
using Sampler = std::function<Element(std::mt19937_64&)>;

// Max over sampled pairs of f(gh) - f(g) - f(h). A LOWER bound on the true
// defect; used to validate a configured defect_bound, never to replace it.
template <class Element>
double estimate_defect(const GroupModel<Element>& model, const Quasimorphism<Element>& f,
                       const Sampler<Element>& sampler, long long trials,
                       unsigned long long seed = 12345) {
  if (trials < 1) throw DomainError("estimate_defect: trials must be >= 1");
  std::mt19937_64 rng(seed);
  double best = -std::numeric_limits<double>::infinity();
  for (long long t = 0; t < trials; ++t) {
    const Element g = sampler(rng);
    const Element h = sampler(rng);
    const double v = f.eval(model.multiply(g, h)) - f.eval(g) - f.eval(h);
    if (v > best) best = v;
  }
  return best;
}

struct Homogenized {
  double value = 0.0;
  double error_bound = 0.0;  // distance to the homogenization is <= D / 2^k
};

// f(g^{2^k}) / 2^k. The standard estimate |f(g^{mn}) - m f(g^n)| <= (m-1) D
// gives the certified bound D / 2^k on the distance to the homogenization.
template <class Element>
Homogenized homogenize(const GroupModel<Element>& model, const Quasimorphism<Element>& f,
                       const Element& g, int k_max) {
  if (k_max < 0 || k_max > 62) throw DomainError("homogenize: k_max out of range");
  const long long p = 1ll << k_max;
  const Element gp = model.power(g, p);  // throws BudgetExceeded on overflow
  return {f.eval(gp) / static_cast<double>(p), f.defect_bound / static_cast<double>(p)};
}

// The algebraic order a <= b iff a = b or f(b^-1 a) < -D. Its semigroup is
// {e} united with {h : f(h) > D}; the returned model carries f as a sandwich
// certificate with c1 = D + margin (any positive margin keeps Q+_f(c1) inside
// the semigroup, since f(g) >= D + margin > D).
template <class Element>
GroupModel<Element> order_from_qm(const GroupModel<Element>& base, const Quasimorphism<Element>& f,
                                  double margin = 1e-6) {
  if (!f.homogeneous) throw DomainError("order_from_qm: f must be homogeneous");
  if (margin <= 0) throw DomainError("order_from_qm: margin must be positive");
  GroupModel<Element> m = base;
  m.name = base.name + "<=" + f.name;
  const double d = f.defect_bound;
  auto mul = base.multiply;
  auto inv = base.invert;
  auto eq = base.equal;
  auto eval = f.eval;
  m.leq = [mul, inv, eq, eval, d](const Element& a, const Element& b) {
    if (eq(a, b)) return true;
    return eval(mul(inv(b), a)) < -d;
  };
  m.certificate = SandwichCertificate<Element>{f, d + margin};
  return m;
}

struct SandwichReport {
  long long trials = 0;
  long long uncertain = 0;  // order oracle could not resolve; not a counterexample
  std::vector<std::string> counterexamples;
  bool ok() const { return counterexamples.empty(); }
};

// Samples elements and reports violations of Q+_f(c1) subset G+ (f(g) >= c1
// must force g >= e) and of G+ subset Q+_f(c2). When c2 != 0 the consequence
// with c2 = 0 (positivity of f on the semigroup) is checked as well.
template <class Element>
SandwichReport sandwich_check(const GroupModel<Element>& model, const Quasimorphism<Element>& f,
                              double c1, double c2, const Sampler<Element>& sampler,
                              long long trials, unsigned long long seed = 12345) {
  if (trials < 1) throw DomainError("sandwich_check: trials must be >= 1");
  std::mt19937_64 rng(seed);
  SandwichReport rep;
  rep.trials = trials;
  for (long long t = 0; t < trials; ++t) {
    const Element g = sampler(rng);
    const double v = f.eval(g);
    bool positive;
    try {
      positive = model.leq(model.identity, g);
    } catch (const UncertainOrder&) {
      ++rep.uncertain;
      continue;
    }
    if (v >= c1 && !positive)
      rep.counterexamples.push_back("f(g) = " + std::to_string(v) + " >= C1 but g is not in G+");
    if (positive && v < c2 - model.tolerance)
      rep.counterexamples.push_back("g in G+ but f(g) = " + std::to_string(v) + " < C2");
    if (c2 != 0.0 && positive && v < -model.tolerance)
      rep.counterexamples.push_back("g in G+ but f(g) = " + std::to_string(v) + " < 0 (C2 = 0 consequence)");
  }
  return rep;
}

struct Bracket {
  double lower = 0.0;
  double upper = 0.0;
};

// A-priori envelope for gamma_n(g,h)/n when f sandwiches the order with
// constant c1:  f(h)/f(g) - D/(n f(g)) <= gamma_n/n <= f(h)/f(g) + (c1 + D + f(g))/(n f(g)).
template <class Element>
Bracket gamma_bounds(const Quasimorphism<Element>& f, double c1, const Element& g, const Element& h,
                     long long n) {
  if (n < 1) throw DomainError("gamma_bounds: n must be positive");
  const double fg = f.eval(g);
  if (!(fg > 0)) throw DomainError("gamma_bounds: f(g) must be positive");
  const double fh = f.eval(h);
  const double d = f.defect_bound;
  const double dn = static_cast<double>(n);
  return {fh / fg - d / (dn * fg), fh / fg + (c1 + d + fg) / (dn * fg)};
}

// The reconstruction value f(h)/f(g) that the relative growth converges to.
template <class Element>
double predicted_gamma(const Quasimorphism<Element>& f, const Element& g, const Element& h) {
  const double fg = f.eval(g);
  if (fg == 0.0) throw DomainError("predicted_gamma: f(g) = 0");
  return f.eval(h) / fg;
}

}  // namespace og
