#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ordergrowth/errors.hpp"
#include "ordergrowth/rational.hpp"

namespace og {

// Exact rank via fraction-free-ish Gaussian elimination (pivots are exact, so
// any nonzero pivot is valid).
inline Eigen::Index rational_rank(RationalMatrix m) {
  Eigen::Index rank = 0;
  for (Eigen::Index col = 0; col < m.cols() && rank < m.rows(); ++col) {
    Eigen::Index piv = -1;
    for (Eigen::Index r = rank; r < m.rows(); ++r)
      if (!m(r, col).is_zero()) { piv = r; break; }
    if (piv < 0) continue;
    m.row(rank).swap(m.row(piv));
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r == rank || m(r, col).is_zero()) continue;
      Rational factor = m(r, col) / m(rank, col);
      m.row(r) -= factor * m.row(rank);
    }
    ++rank;
  }
  return rank;
}

// Solution set of E x = f written as x = origin + basis * y (y free);
// nullopt when the system is inconsistent.
struct AffineSpace {
  RationalVector origin;
  RationalMatrix basis;
};

inline std::optional<AffineSpace> solve_affine(const RationalMatrix& eq, const RationalVector& rhs) {
  if (eq.rows() != rhs.rows()) throw DimensionMismatch("solve_affine: row count mismatch");
  const Eigen::Index d = eq.cols();
  RationalMatrix aug(eq.rows(), d + 1);
  aug.leftCols(d) = eq;
  aug.col(d) = rhs;

  std::vector<Eigen::Index> pivot_col;
  Eigen::Index rank = 0;
  for (Eigen::Index col = 0; col < d && rank < aug.rows(); ++col) {
    Eigen::Index piv = -1;
    for (Eigen::Index r = rank; r < aug.rows(); ++r)
      if (!aug(r, col).is_zero()) { piv = r; break; }
    if (piv < 0) continue;
    aug.row(rank).swap(aug.row(piv));
    aug.row(rank) /= aug(rank, col);
    for (Eigen::Index r = 0; r < aug.rows(); ++r) {
      if (r == rank || aug(r, col).is_zero()) continue;
      aug.row(r) -= aug(r, col) * aug.row(rank);
    }
    pivot_col.push_back(col);
    ++rank;
  }
  for (Eigen::Index r = rank; r < aug.rows(); ++r)
    if (!aug(r, d).is_zero()) return std::nullopt;

  std::vector<bool> is_pivot(static_cast<size_t>(d), false);
  for (Eigen::Index c : pivot_col) is_pivot[static_cast<size_t>(c)] = true;

  AffineSpace out;
  out.origin = RationalVector::Zero(d);
  for (Eigen::Index r = 0; r < rank; ++r) out.origin(pivot_col[static_cast<size_t>(r)]) = aug(r, d);

  const Eigen::Index free_count = d - rank;
  out.basis = RationalMatrix::Zero(d, free_count);
  Eigen::Index k = 0;
  for (Eigen::Index col = 0; col < d; ++col) {
    if (is_pivot[static_cast<size_t>(col)]) continue;
    out.basis(col, k) = Rational(1);
    for (Eigen::Index r = 0; r < rank; ++r)
      out.basis(pivot_col[static_cast<size_t>(r)], k) = -aug(r, col);
    ++k;
  }
  return out;
}

namespace detail {

// Scale a strict row (a, b) by a positive rational so duplicates collide.
inline void normalize_strict_row(RationalVector& a, Rational& b) {
  Rational scale(0);
  for (Eigen::Index j = 0; j < a.size(); ++j) scale += abs(a(j));
  scale += abs(b);
  if (scale.is_zero()) return;
  a /= scale;
  b /= scale;
}

inline std::string strict_row_key(const RationalVector& a, const Rational& b) {
  std::string key;
  for (Eigen::Index j = 0; j < a.size(); ++j) { key += a(j).str(); key += ','; }
  key += '|';
  key += b.str();
  return key;
}

}  // namespace detail

// Interior point of {y : A y > b} found by Fourier-Motzkin elimination of the
// last variable, recursing, and back-substituting a strictly interior value at
// each level. Exact; nullopt iff the open polyhedron is empty.
inline std::optional<RationalVector> strict_interior_point(const RationalMatrix& a, const RationalVector& b) {
  if (a.rows() != b.rows()) throw DimensionMismatch("strict_interior_point: row count mismatch");
  const Eigen::Index d = a.cols();

  std::vector<Eigen::Index> pos, neg;
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    bool all_zero = true;
    for (Eigen::Index j = 0; j < d; ++j)
      if (!a(r, j).is_zero()) { all_zero = false; break; }
    if (all_zero) {
      if (!(b(r) < Rational(0))) return std::nullopt;  // 0 > b fails
    }
  }
  if (d == 0) return RationalVector(0);

  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    int s = a(r, d - 1).sign();
    if (s > 0) pos.push_back(r);
    else if (s < 0) neg.push_back(r);
  }

  // Reduced system over the first d-1 variables: carried zero-coefficient rows
  // plus one combination per (lower, upper) pair.
  std::vector<RationalVector> rows;
  std::vector<Rational> rhs;
  std::set<std::string> seen;
  auto push_row = [&](RationalVector row, Rational val) {
    detail::normalize_strict_row(row, val);
    bool all_zero = true;
    for (Eigen::Index j = 0; j < row.size(); ++j)
      if (!row(j).is_zero()) { all_zero = false; break; }
    if (all_zero && val < Rational(0)) return;  // vacuous
    if (seen.insert(detail::strict_row_key(row, val)).second) {
      rows.push_back(std::move(row));
      rhs.push_back(std::move(val));
    }
  };
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    if (a(r, d - 1).is_zero()) push_row(a.row(r).head(d - 1), b(r));
  for (Eigen::Index p : pos)
    for (Eigen::Index q : neg) {
      const Rational cp = a(p, d - 1), cq = a(q, d - 1);
      RationalVector row = cp * a.row(q).head(d - 1).transpose() - cq * a.row(p).head(d - 1).transpose();
      push_row(std::move(row), cp * b(q) - cq * b(p));
    }
  if (rows.size() > 200000) throw Error("strict_interior_point: elimination blow-up");

  RationalMatrix ar(static_cast<Eigen::Index>(rows.size()), d - 1);
  RationalVector br(static_cast<Eigen::Index>(rows.size()));
  for (size_t i = 0; i < rows.size(); ++i) {
    ar.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
    br(static_cast<Eigen::Index>(i)) = rhs[i];
  }
  auto sub = strict_interior_point(ar, br);
  if (!sub) return std::nullopt;

  // Strict bounds on the eliminated variable at the sub-witness.
  std::optional<Rational> lo, hi;
  for (Eigen::Index p : pos) {
    Rational bound = (b(p) - a.row(p).head(d - 1) * (*sub)) / a(p, d - 1);
    if (!lo || bound > *lo) lo = bound;
  }
  for (Eigen::Index q : neg) {
    Rational bound = (b(q) - a.row(q).head(d - 1) * (*sub)) / a(q, d - 1);
    if (!hi || bound < *hi) hi = bound;
  }
  Rational value(0);
  if (lo && hi) value = (*lo + *hi) / Rational(2);
  else if (lo) value = *lo + Rational(1);
  else if (hi) value = *hi - Rational(1);

  RationalVector out(d);
  out.head(d - 1) = *sub;
  out(d - 1) = value;
  return out;
}

struct FeasibilityResult {
  bool feasible = false;
  RationalVector witness;  // meaningful iff feasible
};

// Exact witness for { x : eq x = eq_rhs, strict x > strict_rhs }.
inline FeasibilityResult solve_strict_feasibility(const RationalMatrix& eq, const RationalVector& eq_rhs,
                                                  const RationalMatrix& strict, const RationalVector& strict_rhs) {
  if (eq.cols() != strict.cols() && eq.rows() > 0 && strict.rows() > 0)
    throw DimensionMismatch("solve_strict_feasibility: variable count mismatch");
  const Eigen::Index d = eq.rows() > 0 ? eq.cols() : strict.cols();

  AffineSpace space;
  if (eq.rows() > 0) {
    auto solved = solve_affine(eq, eq_rhs);
    if (!solved) return {};
    space = *solved;
  } else {
    space.origin = RationalVector::Zero(d);
    space.basis = RationalMatrix::Identity(d, d);
  }

  RationalMatrix a = strict * space.basis;
  RationalVector b = strict_rhs - strict * space.origin;
  auto y = strict_interior_point(a, b);
  if (!y) return {};
  FeasibilityResult out;
  out.feasible = true;
  out.witness = space.origin + space.basis * (*y);
  return out;
}

}  // namespace og
