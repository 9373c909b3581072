#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ordergrowth/feasibility.hpp"

using og::Rational;
using og::RationalMatrix;
using og::RationalVector;

namespace {

RationalMatrix mat(std::initializer_list<std::initializer_list<long long>> rows) {
  const Eigen::Index r = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index c = r ? static_cast<Eigen::Index>(rows.begin()->size()) : 0;
  RationalMatrix m(r, c);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (long long v : row) m(i, j++) = Rational(v);
    ++i;
  }
  return m;
}

RationalVector vec(std::initializer_list<long long> vals) {
  RationalVector v(static_cast<Eigen::Index>(vals.size()));
  Eigen::Index i = 0;
  for (long long x : vals) v(i++) = Rational(x);
  return v;
}

}  // namespace

TEST_CASE("rational_rank on exact matrices") {
  CHECK(og::rational_rank(mat({{1, 0}, {0, 1}})) == 2);
  CHECK(og::rational_rank(mat({{1, 2}, {2, 4}})) == 1);
  CHECK(og::rational_rank(mat({{0, 0}, {0, 0}})) == 0);
  // rank is invariant under a rational row scaling that doubles would mangle
  RationalMatrix m(2, 2);
  m << Rational(1, 3), Rational(1, 7), Rational(2, 3), Rational(2, 7);
  CHECK(og::rational_rank(m) == 1);
  CHECK(og::rational_rank(mat({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}})) == 2);
}

TEST_CASE("solve_affine returns a parametrization that satisfies the system") {
  const RationalMatrix eq = mat({{1, 1, 0}, {0, 1, 1}});
  const RationalVector rhs = vec({3, 5});
  auto sp = og::solve_affine(eq, rhs);
  REQUIRE(sp.has_value());
  CHECK(sp->basis.cols() == 1);
  // origin solves the system exactly
  RationalVector r = eq * sp->origin - rhs;
  for (Eigen::Index i = 0; i < r.size(); ++i) CHECK(r(i).is_zero());
  // every basis direction is in the kernel
  RationalVector k = eq * sp->basis.col(0);
  for (Eigen::Index i = 0; i < k.size(); ++i) CHECK(k(i).is_zero());
}

TEST_CASE("solve_affine detects inconsistency") {
  auto sp = og::solve_affine(mat({{1, 1}, {2, 2}}), vec({1, 3}));
  CHECK(!sp.has_value());
}

TEST_CASE("solve_affine with unique solution has empty basis") {
  auto sp = og::solve_affine(mat({{2, 0}, {0, 4}}), vec({1, 1}));
  REQUIRE(sp.has_value());
  CHECK(sp->basis.cols() == 0);
  CHECK(sp->origin(0) == Rational(1, 2));
  CHECK(sp->origin(1) == Rational(1, 4));
}

TEST_CASE("strict_interior_point finds a point strictly inside an open triangle") {
  // x > 0, y > 0, -x - y > -3
  const RationalMatrix a = mat({{1, 0}, {0, 1}, {-1, -1}});
  const RationalVector b = vec({0, 0, -3});
  auto w = og::strict_interior_point(a, b);
  REQUIRE(w.has_value());
  RationalVector s = a * (*w);
  for (Eigen::Index i = 0; i < s.size(); ++i) CHECK(s(i) > b(i));
}

TEST_CASE("strict_interior_point reports empty open sets") {
  CHECK(!og::strict_interior_point(mat({{1}, {-1}}), vec({0, 0})).has_value());
  // x > 1 and x < 1 (open, so the shared face is excluded)
  CHECK(!og::strict_interior_point(mat({{1}, {-1}}), vec({1, -1})).has_value());
  // degenerate all-zero row demanding 0 > 1
  CHECK(!og::strict_interior_point(mat({{0, 0}}), vec({1})).has_value());
}

TEST_CASE("strict_interior_point handles unbounded directions") {
  auto w = og::strict_interior_point(mat({{1, 0}}), vec({1000}));
  REQUIRE(w.has_value());
  CHECK((*w)(0) > Rational(1000));
}

TEST_CASE("solve_strict_feasibility combines equalities with strict inequalities") {
  // x + y = 1, x > 0, y > 0  (open simplex, feasible)
  auto r = og::solve_strict_feasibility(mat({{1, 1}}), vec({1}), mat({{1, 0}, {0, 1}}), vec({0, 0}));
  REQUIRE(r.feasible);
  CHECK(r.witness(0) + r.witness(1) == Rational(1));
  CHECK(r.witness(0) > Rational(0));
  CHECK(r.witness(1) > Rational(0));

  // x + y = 0, x > 0, y > 0 is infeasible
  auto bad = og::solve_strict_feasibility(mat({{1, 1}}), vec({0}), mat({{1, 0}, {0, 1}}), vec({0, 0}));
  CHECK(!bad.feasible);

  // inconsistent equalities short-circuit
  auto inc = og::solve_strict_feasibility(mat({{1, 0}, {1, 0}}), vec({0, 1}), mat({{0, 1}}), vec({0}));
  CHECK(!inc.feasible);
}

TEST_CASE("solve_strict_feasibility with no equalities reduces to the interior problem") {
  auto r = og::solve_strict_feasibility(RationalMatrix(0, 2), RationalVector(0),
                                        mat({{1, 1}, {1, -1}}), vec({2, 0}));
  REQUIRE(r.feasible);
  CHECK(r.witness(0) + r.witness(1) > Rational(2));
  CHECK(r.witness(0) - r.witness(1) > Rational(0));
}
