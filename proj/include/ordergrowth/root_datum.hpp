#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ordergrowth/errors.hpp"
#include "ordergrowth/feasibility.hpp"
#include "ordergrowth/lifted.hpp"
#include "ordergrowth/rational.hpp"

namespace og {

// Root datum of a classical Hermitian family on its compact Cartan,
// in integer coordinates. Coroots are stored aligned with their roots;
// `constraints` cuts the Cartan subspace out of the ambient coordinates
// (the trace-zero row for su, nothing for sp). j_coords holds iJ, scaled
// so every noncompact positive root evaluates to exactly 1 on it.
struct HermitianRootDatum {
  std::string family;  // "sp" or "su"
  int p = 0, q = 0;    // sp(2n): p = n; su(p,q): block sizes
  Eigen::Index dim = 0;
  std::vector<RationalVector> compact_positive;
  std::vector<RationalVector> noncompact_positive;
  std::vector<RationalVector> strongly_orthogonal;
  std::vector<RationalVector> compact_coroots;
  std::vector<RationalVector> noncompact_coroots;
  RationalMatrix constraints;  // rows annihilating the Cartan
  RationalVector j_coords;
};

namespace detail {

inline RationalVector unit_sum(Eigen::Index dim, Eigen::Index i, Eigen::Index j, int si, int sj) {
  RationalVector v = RationalVector::Constant(dim, Rational(0));
  v[i] = v[i] + Rational(si);
  v[j] = v[j] + Rational(sj);
  return v;
}

inline std::string key_of(const RationalVector& v) {
  std::string k;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    k += v[i].str();
    k += ';';
  }
  return k;
}

inline std::string key_of(const RationalMatrix& m) {
  std::string k;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      k += m(i, j).str();
      k += ';';
    }
  return k;
}

inline bool is_integer(const Rational& r) { return denominator(r.rep()) == 1; }

inline Rational dot(const RationalVector& a, const RationalVector& b) {
  Rational s(0);
  for (Eigen::Index i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace detail

inline HermitianRootDatum build_sp(int n) {
  if (n < 1) throw DomainError("sp rank must be at least 1");
  HermitianRootDatum d;
  d.family = "sp";
  d.p = n;
  d.dim = n;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      d.compact_positive.push_back(detail::unit_sum(n, i, j, 1, -1));
      d.compact_coroots.push_back(detail::unit_sum(n, i, j, 1, -1));
      d.noncompact_positive.push_back(detail::unit_sum(n, i, j, 1, 1));
      d.noncompact_coroots.push_back(detail::unit_sum(n, i, j, 1, 1));
    }
  for (int i = 0; i < n; ++i) {
    RationalVector lng = detail::unit_sum(n, i, i, 1, 1);  // 2 e_i
    d.noncompact_positive.push_back(lng);
    d.noncompact_coroots.push_back(detail::unit_sum(n, i, i, 1, 0));  // e_i
    d.strongly_orthogonal.push_back(lng);
  }
  d.constraints.resize(0, n);
  d.j_coords = RationalVector::Constant(n, Rational(1, 2));
  return d;
}

inline HermitianRootDatum build_su(int p, int q) {
  if (p < 1 || q < 1) throw DomainError("su block sizes must be at least 1");
  const Eigen::Index dim = p + q;
  HermitianRootDatum d;
  d.family = "su";
  d.p = p;
  d.q = q;
  d.dim = dim;
  auto add_compact = [&](int i, int j) {
    d.compact_positive.push_back(detail::unit_sum(dim, i, j, 1, -1));
    d.compact_coroots.push_back(detail::unit_sum(dim, i, j, 1, -1));
  };
  for (int i = 0; i < p; ++i)
    for (int j = i + 1; j < p; ++j) add_compact(i, j);
  for (int i = 0; i < q; ++i)
    for (int j = i + 1; j < q; ++j) add_compact(p + i, p + j);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < q; ++j) {
      d.noncompact_positive.push_back(detail::unit_sum(dim, i, p + j, 1, -1));
      d.noncompact_coroots.push_back(detail::unit_sum(dim, i, p + j, 1, -1));
    }
  for (int i = 0; i < std::min(p, q); ++i)
    d.strongly_orthogonal.push_back(detail::unit_sum(dim, i, p + i, 1, -1));
  d.constraints = RationalMatrix::Constant(1, dim, Rational(1));
  d.j_coords.resize(dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    d.j_coords[i] = i < p ? Rational(q, p + q) : Rational(-static_cast<long long>(p), p + q);
  return d;
}

inline HermitianRootDatum build(const std::string& family, int a, int b = 0) {
  if (family == "sp") return build_sp(a);
  if (family == "su") return build_su(a, b);
  throw UnsupportedFamily("unknown family: '" + family + "' (supported: sp, su)");
}

struct DatumReport {
  bool normalization_ok = false;       // alpha(iJ) = 1 on all noncompact positives
  bool strongly_orthogonal_ok = false; // pairwise neither sum nor difference is a root
  bool integrality_ok = false;         // all Cartan pairings <beta, alpha^vee> integral
  bool reflection_closure_ok = false;  // root set closed under all root reflections
  bool coroot_pairing_ok = false;      // <alpha, alpha^vee> = 2
  bool ok() const {
    return normalization_ok && strongly_orthogonal_ok && integrality_ok && reflection_closure_ok &&
           coroot_pairing_ok;
  }
};

// Every check below is an exact rational identity: a failed flag means the
// table itself is wrong, not that a tolerance was missed.
inline DatumReport validate(const HermitianRootDatum& d) {
  DatumReport rep;

  rep.normalization_ok = true;
  for (const auto& a : d.noncompact_positive)
    if (!(detail::dot(a, d.j_coords) == Rational(1))) rep.normalization_ok = false;

  std::vector<RationalVector> roots;
  std::vector<RationalVector> coroots;
  for (size_t i = 0; i < d.compact_positive.size(); ++i) {
    roots.push_back(d.compact_positive[i]);
    coroots.push_back(d.compact_coroots[i]);
    roots.push_back(RationalVector(-d.compact_positive[i]));
    coroots.push_back(RationalVector(-d.compact_coroots[i]));
  }
  for (size_t i = 0; i < d.noncompact_positive.size(); ++i) {
    roots.push_back(d.noncompact_positive[i]);
    coroots.push_back(d.noncompact_coroots[i]);
    roots.push_back(RationalVector(-d.noncompact_positive[i]));
    coroots.push_back(RationalVector(-d.noncompact_coroots[i]));
  }

  std::set<std::string> root_set;
  for (const auto& r : roots) root_set.insert(detail::key_of(r));

  rep.strongly_orthogonal_ok = true;
  for (size_t i = 0; i < d.strongly_orthogonal.size(); ++i) {
    if (!root_set.count(detail::key_of(d.strongly_orthogonal[i]))) rep.strongly_orthogonal_ok = false;
    for (size_t j = i + 1; j < d.strongly_orthogonal.size(); ++j) {
      const RationalVector sum = d.strongly_orthogonal[i] + d.strongly_orthogonal[j];
      const RationalVector dif = d.strongly_orthogonal[i] - d.strongly_orthogonal[j];
      if (root_set.count(detail::key_of(sum)) || root_set.count(detail::key_of(dif)))
        rep.strongly_orthogonal_ok = false;
    }
  }

  rep.integrality_ok = true;
  rep.reflection_closure_ok = true;
  rep.coroot_pairing_ok = true;
  for (size_t i = 0; i < roots.size(); ++i) {
    if (!(detail::dot(roots[i], coroots[i]) == Rational(2))) rep.coroot_pairing_ok = false;
    for (size_t j = 0; j < roots.size(); ++j) {
      const Rational pairing = detail::dot(roots[j], coroots[i]);
      if (!detail::is_integer(pairing)) rep.integrality_ok = false;
      const RationalVector reflected = roots[j] - pairing * roots[i];
      if (!root_set.count(detail::key_of(reflected))) rep.reflection_closure_ok = false;
    }
  }
  return rep;
}

// mu restricted to the Cartan: the average of the noncompact positive roots,
// which the j_coords normalization pins to mu(iJ) = 1.
inline Rational mu_on_cartan(const HermitianRootDatum& d, const RationalVector& h) {
  if (h.size() != d.dim) throw DimensionMismatch("mu_on_cartan: vector has wrong dimension");
  for (Eigen::Index r = 0; r < d.constraints.rows(); ++r) {
    Rational s(0);
    for (Eigen::Index c = 0; c < d.dim; ++c) s += d.constraints(r, c) * h[c];
    if (!s.is_zero()) throw DomainError("mu_on_cartan: vector lies outside the Cartan (constraint violated)");
  }
  Rational total(0);
  for (const auto& a : d.noncompact_positive) total += detail::dot(a, h);
  return total / Rational(static_cast<long long>(d.noncompact_positive.size()));
}

struct WeylReport {
  long long order = 0;
  Eigen::Index fixed_dim = 0;
  bool mu_invariant = false;
};

// Compact Weyl group: closure of the reflections in compact roots, acting on
// Cartan coordinates as R = I - coroot root^T. Fixed-space dimension and
// mu-invariance are exact rank/identity computations.
inline WeylReport weyl_invariance_check(const HermitianRootDatum& d, long long cap = 10000) {
  WeylReport rep;
  const Eigen::Index n = d.dim;
  RationalMatrix id = RationalMatrix::Constant(n, n, Rational(0));
  for (Eigen::Index i = 0; i < n; ++i) id(i, i) = Rational(1);

  std::vector<RationalMatrix> gens;
  for (size_t g = 0; g < d.compact_positive.size(); ++g) {
    RationalMatrix r = id;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        r(i, j) -= d.compact_coroots[g][i] * d.compact_positive[g][j];
    gens.push_back(r);
  }

  std::map<std::string, RationalMatrix> seen;
  seen.emplace(detail::key_of(id), id);
  std::vector<RationalMatrix> frontier{id};
  while (!frontier.empty()) {
    std::vector<RationalMatrix> next;
    for (const auto& w : frontier)
      for (const auto& g : gens) {
        RationalMatrix wg = g * w;
        auto [it, fresh] = seen.emplace(detail::key_of(wg), wg);
        if (fresh) next.push_back(std::move(wg));
        if (static_cast<long long>(seen.size()) > cap)
          throw BudgetExceeded("weyl closure exceeded the element cap");
      }
    frontier = std::move(next);
  }
  rep.order = static_cast<long long>(seen.size());

  RationalMatrix stacked(static_cast<Eigen::Index>(gens.size()) * n + d.constraints.rows(), n);
  Eigen::Index row = 0;
  for (const auto& g : gens) {
    RationalMatrix diff = g - id;
    for (Eigen::Index i = 0; i < n; ++i, ++row)
      for (Eigen::Index j = 0; j < n; ++j) stacked(row, j) = diff(i, j);
  }
  for (Eigen::Index i = 0; i < d.constraints.rows(); ++i, ++row)
    for (Eigen::Index j = 0; j < n; ++j) stacked(row, j) = d.constraints(i, j);
  rep.fixed_dim = n - rational_rank(stacked);

  // mu = s^T H with s the root sum; invariance under R is s^T R = s^T,
  // which for a reflection reduces to coroot . s = 0.
  RationalVector s = RationalVector::Constant(n, Rational(0));
  for (const auto& a : d.noncompact_positive) s += a;
  rep.mu_invariant = true;
  for (const auto& c : d.compact_coroots)
    if (!detail::dot(c, s).is_zero()) rep.mu_invariant = false;
  return rep;
}

// Is iJ an interior point of the cone spanned by the noncompact positive
// coroots inside the Cartan? Interior needs a strictly positive combination
// plus full span of the Cartan subspace.
inline bool j_in_minimal_cone(const HermitianRootDatum& d) {
  const Eigen::Index m = static_cast<Eigen::Index>(d.noncompact_coroots.size());
  RationalMatrix cols(d.dim, m);
  for (Eigen::Index j = 0; j < m; ++j)
    for (Eigen::Index i = 0; i < d.dim; ++i) cols(i, j) = d.noncompact_coroots[j][i];
  RationalMatrix strict = RationalMatrix::Constant(m, m, Rational(0));
  for (Eigen::Index i = 0; i < m; ++i) strict(i, i) = Rational(1);
  const FeasibilityResult fr = solve_strict_feasibility(
      cols, d.j_coords, strict, RationalVector::Constant(m, Rational(0)));
  if (!fr.feasible) return false;
  RationalMatrix stack(m, d.dim);
  for (Eigen::Index j = 0; j < m; ++j)
    for (Eigen::Index i = 0; i < d.dim; ++i) stack(j, i) = d.noncompact_coroots[j][i];
  return rational_rank(stack) == d.dim - rational_rank(d.constraints);
}

// su(1,1) is the universal-cover model seen through its root datum: on the
// compact Cartan direction iJ the two mu computations must agree.
inline double su11_consistency() {
  const HermitianRootDatum d = build_su(1, 1);
  double worst = 0.0;
  for (int k = -12; k <= 12; ++k) {
    const Rational t(k, 4);
    RationalVector h = d.j_coords;
    for (Eigen::Index i = 0; i < h.size(); ++i) h[i] = h[i] * t;
    const double via_datum = mu_on_cartan(d, h).to_double();
    const double via_lift = og::sl2::mu(og::sl2::exp_j(t.to_double()));
    worst = std::max(worst, std::abs(via_datum - via_lift));
  }
  return worst;
}

}  // namespace og
