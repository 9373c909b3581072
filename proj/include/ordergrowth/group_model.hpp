#pragma once

#include <functional>
#include <optional>
#include <string>

#include "ordergrowth/errors.hpp"

namespace og {

// Quasimorphism on a model's element type. defect_bound is a configured UPPER
// bound on the true defect; estimate_defect validates it from below but never
// replaces it (soundness of the growth brackets depends on the upper bound).
template <class Element>
struct Quasimorphism {
  std::string name;
  std::function<double(const Element&)> eval;
  double defect_bound = 0.0;
  bool homogeneous = false;
};

// Witness that f sandwiches the model's order: f(g) >= c1 implies g >= e, and
// g >= e implies f(g) >= 0. Registering one on a model turns growth estimates
// into certified brackets.
template <class Element>
struct SandwichCertificate {
  Quasimorphism<Element> f;
  double c1 = 0.0;
};

// Group with a bi-invariant partial-order oracle. All callables must be pure;
// leq(a, b) answers "a <= b". equal is equality up to the model tolerance.
template <class Element>
struct GroupModel {
  std::string name;
  Element identity{};
  std::function<Element(const Element&, const Element&)> multiply;
  std::function<Element(const Element&)> invert;
  std::function<bool(const Element&, const Element&)> leq;
  std::function<bool(const Element&, const Element&)> equal;
  double tolerance = 1e-9;
  std::optional<SandwichCertificate<Element>> certificate;
  // Optional O(1) power override; default is square-and-multiply.
  std::function<Element(const Element&, long long)> power_fn;

  Element power(const Element& g, long long n) const {
    if (power_fn) return power_fn(g, n);
    Element base = n < 0 ? invert(g) : g;
    unsigned long long k = n < 0 ? 0ull - static_cast<unsigned long long>(n)
                                 : static_cast<unsigned long long>(n);
    Element acc = identity;
    while (k != 0) {
      if (k & 1ull) acc = multiply(acc, base);
      k >>= 1;
      if (k != 0) base = multiply(base, base);
    }
    return acc;
  }
};

// Integers under addition with the standard total order. Sandwiched by the
// identity map with C1 = 1 (f(n) >= 1 implies n >= 1 > 0) and defect 0.
inline GroupModel<long long> integers_model() {
  GroupModel<long long> m;
  m.name = "int";
  m.identity = 0;
  m.multiply = [](const long long& a, const long long& b) {
    long long r;
    if (__builtin_add_overflow(a, b, &r)) throw BudgetExceeded("integer model: addition overflow");
    return r;
  };
  m.invert = [](const long long& a) { return -a; };
  m.leq = [](const long long& a, const long long& b) { return a <= b; };
  m.equal = [](const long long& a, const long long& b) { return a == b; };
  m.tolerance = 0.0;
  m.power_fn = [](const long long& g, long long n) {
    long long r;
    if (__builtin_mul_overflow(g, n, &r)) throw BudgetExceeded("integer model: power overflow");
    return r;
  };
  Quasimorphism<long long> f;
  f.name = "identity";
  f.eval = [](const long long& g) { return static_cast<double>(g); };
  f.defect_bound = 0.0;
  f.homogeneous = true;
  m.certificate = SandwichCertificate<long long>{f, 1.0};
  return m;
}

}  // namespace og
