#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "ordergrowth/errors.hpp"
#include "ordergrowth/group_model.hpp"
#include "ordergrowth/quasimorphism.hpp"

namespace og::sl2 {

inline constexpr double kPi = std::numbers::pi;

using Mat2 = Eigen::Matrix2d;
using AlgebraElement = Eigen::Matrix2d;  // traceless 2x2; validated where consumed

// Element of the universal cover: a det-1 matrix acting on the projective
// line (angles mod pi) plus tau = lifted image of angle 0, which pins the
// branch of the monotone lift.
struct LiftedElement {
  Mat2 m = Mat2::Identity();
  double tau = 0.0;
};

inline Mat2 j_matrix() {
  Mat2 j;
  j << 0.0, -0.5, 0.5, 0.0;
  return j;
}

inline double j_component(const AlgebraElement& x) { return x(1, 0) - x(0, 1); }

inline AlgebraElement p_component(const AlgebraElement& x) { return (x + x.transpose()) / 2.0; }

// Canonical representative of {M, -M}: first nonzero entry of column 0 positive.
inline LiftedElement sign_normalize(LiftedElement g) {
  if (g.m(0, 0) < 0.0 || (g.m(0, 0) == 0.0 && g.m(1, 0) < 0.0)) g.m = -g.m;
  return g;
}

inline LiftedElement identity_element() { return {Mat2::Identity(), 0.0}; }

inline LiftedElement deck(long long k) { return {Mat2::Identity(), 2.0 * kPi * static_cast<double>(k)}; }

// Monotone lift f~ of the projective action, pinned by f~(0) = tau and
// extended by f~(x + pi) = f~(x) + pi. For x0 in [0, pi) the image angle is
// the unique representative in [tau, tau + pi); it is computed as tau plus
// the angle from M.e1 to M.u, whose cross product is det(M) sin(x0) = sin(x0)
// exactly — so the branch needs no seam handling and stays accurate even when
// the matrix norm is so large that raw angles collapse onto one direction.
inline double lift_eval(const LiftedElement& g, double x) {
  double k = std::floor(x / kPi);
  double x0 = x - k * kPi;
  if (x0 >= kPi) {
    x0 -= kPi;
    k += 1.0;
  } else if (x0 < 0.0) {
    x0 += kPi;
    k -= 1.0;
  }
  const Eigen::Vector2d u(std::cos(x0), std::sin(x0));
  const Eigen::Vector2d a = g.m.col(0);
  const Eigen::Vector2d b = g.m * u;
  const double dot = a.dot(b);
  if (std::isnan(dot)) throw BudgetExceeded("lift evaluation overflowed past double range");
  const double delta = std::atan2(std::sin(x0), dot);  // in [0, pi]
  return g.tau + delta + k * kPi;
}

inline LiftedElement multiply(const LiftedElement& g, const LiftedElement& h) {
  LiftedElement out;
  out.m = g.m * h.m;
  if (!out.m.allFinite()) throw BudgetExceeded("matrix product overflowed");
  // Re-normalize the determinant drift when that is computable in doubles;
  // for very large norms det underflows after scaling, and the drift (a
  // relative epsilon per product) is left alone rather than amplified.
  const double s = std::max(1.0, out.m.cwiseAbs().maxCoeff());
  const double ds = (out.m / s).determinant();
  if (std::isfinite(ds) && ds >= 1e-300) out.m /= s * std::sqrt(ds);
  out.tau = lift_eval(g, h.tau);
  if (!std::isfinite(out.tau)) throw BudgetExceeded("lifted angle overflowed");
  return sign_normalize(out);
}

inline LiftedElement inverse(const LiftedElement& g) {
  LiftedElement out;
  out.m << g.m(1, 1), -g.m(0, 1), -g.m(1, 0), g.m(0, 0);  // adjugate of a det-1 matrix
  // tau of the inverse: f~(beta) is an exact multiple of pi when beta
  // represents the preimage of angle 0; round strips the fp noise.
  const Eigen::Vector2d w = out.m.col(0);
  double beta = std::atan2(w[1], w[0]);
  beta -= kPi * std::floor(beta / kPi);
  out.tau = beta - kPi * std::round(lift_eval(g, beta) / kPi);
  return sign_normalize(out);
}

// exp(X) for traceless X via X^2 = -det(X) I, with tau tracked continuously
// along t |-> exp(tX) from tau(0) = 0. Step count keeps each base-direction
// increment under 1/8 radian, so the mod-pi unwrapping is exact.
inline LiftedElement exp_from_algebra(const AlgebraElement& x) {
  const double scale = std::max(1.0, x.cwiseAbs().maxCoeff());
  if (std::abs(x.trace()) > 1e-12 * scale) throw DomainError("exp_from_algebra: matrix must be traceless");
  const double det = x.determinant();
  auto at = [&](double t) -> Mat2 {
    const double d2 = det * t * t;
    double c, s;
    if (d2 > 1e-12) {
      const double r = std::sqrt(d2);
      c = std::cos(r);
      s = t * std::sin(r) / r;
    } else if (d2 < -1e-12) {
      const double r = std::sqrt(-d2);
      c = std::cosh(r);
      s = t * std::sinh(r) / r;
    } else {
      c = 1.0 - d2 / 2.0 * (1.0 - d2 / 12.0);
      s = t * (1.0 - d2 / 6.0 * (1.0 - d2 / 20.0));
    }
    return Mat2(c * Mat2::Identity() + s * x);
  };
  const int steps = static_cast<int>(std::max(16.0, std::ceil(8.0 * x.norm())));
  double theta = 0.0;
  for (int k = 1; k <= steps; ++k) {
    const Mat2 m = at(static_cast<double>(k) / steps);
    const double raw = std::atan2(m(1, 0), m(0, 0));
    theta = raw + kPi * std::round((theta - raw) / kPi);
  }
  LiftedElement out{at(1.0), theta};
  const double d = out.m.determinant();
  if (d > 0.0 && std::isfinite(d)) out.m /= std::sqrt(d);
  return sign_normalize(out);
}

inline LiftedElement exp_j(double t) { return exp_from_algebra(Mat2(t * j_matrix())); }

// g >= e iff the lift displacement f~(x) - x is >= -tol everywhere. Samples
// on an offset grid decide "no"; "yes" is certified through the one-sided
// Lipschitz bound on the displacement: f~' >= sigma_min^2, so the drop from
// a sample to anywhere in its cell is at most (step/2)(1 - sigma_min^2).
// When the band [-tol, -tol + drop) cannot be left before the grid cap,
// the answer is a refusal, never a guess.
inline bool is_positive(const LiftedElement& g, long long grid_size = 64, long long max_grid = 1ll << 22) {
  if (grid_size < 64) throw DomainError("is_positive: grid_size must be at least 64");
  const double tol = 1e-9;
  const double t = g.m.squaredNorm();  // sigma_max^2 + sigma_min^2 for det 1
  double l_down = 1.0;
  if (std::isfinite(t) && t < 1e150) {
    const double smin2 = 2.0 / (t + std::sqrt(std::max(0.0, t * t - 4.0)));
    l_down = std::max(0.0, 1.0 - smin2);
  }
  for (long long n = grid_size; n <= max_grid; n *= 4) {
    double worst = std::numeric_limits<double>::infinity();
    for (long long j = 0; j < n; ++j) {
      const double xj = (static_cast<double>(j) + 0.5) * kPi / static_cast<double>(n);
      const double d = lift_eval(g, xj) - xj;
      if (d < -tol) return false;
      worst = std::min(worst, d);
    }
    const double drop = (kPi / static_cast<double>(n)) / 2.0 * l_down;
    if (worst - drop >= -tol) return true;
  }
  throw UncertainOrder("is_positive: displacement sits inside the tolerance band at the grid cap");
}

namespace detail {

// All displacement values of one element lie strictly inside a single
// interval (k pi, (k+1) pi) when no direction is fixed; pick k from the
// sampled value farthest from the lattice, where fp noise cannot flip it.
inline double displacement_interval_floor(const LiftedElement& g) {
  double best = g.tau;
  double margin = std::abs(best / kPi - std::round(best / kPi));
  for (int j = 0; j < 16; ++j) {
    const double x = (j + 0.5) * kPi / 16.0;
    const double d = lift_eval(g, x) - x;
    const double m = std::abs(d / kPi - std::round(d / kPi));
    if (m > margin) {
      margin = m;
      best = d;
    }
  }
  return std::floor(best / kPi);
}

}  // namespace detail

// Twice the translation number of the lift, computed exactly per conjugacy
// class: central elements read it off tau, elliptic ones off the rotation
// angle (branch pinned by the displacement interval), and elements with a
// fixed direction off the — exactly integral — displacement there.
// Near the elliptic/parabolic boundary (|tr| within 1e-12 of 2) the
// classification may shift an elliptic rotation of angle <= 1e-6 into the
// fixed-direction branch; the result then errs by at most 2e-6.
inline double mu(const LiftedElement& g) {
  if ((g.m - Mat2::Identity()).cwiseAbs().maxCoeff() < 1e-13)
    return 2.0 * kPi * std::round(g.tau / kPi);
  const double tr = g.m.trace();
  if (std::abs(tr) < 2.0 - 1e-12) {
    const double phi =
        std::copysign(std::acos(std::clamp(tr / 2.0, -1.0, 1.0)), g.m(1, 0) - g.m(0, 1));
    const double k = detail::displacement_interval_floor(g);
    const double rho = phi - kPi * std::floor((phi - k * kPi) / kPi);
    return 2.0 * rho;
  }
  // |lambda| >= 1 eigenvalue, overflow-safe: tr/2 (1 + sqrt(1 - 4/tr^2)).
  const double t2 = tr * tr;
  const double disc = std::isfinite(t2) ? std::max(0.0, 1.0 - 4.0 / t2) : 1.0;
  const double lambda = tr / 2.0 * (1.0 + std::sqrt(disc));
  const Eigen::Vector2d v1(g.m(0, 1), lambda - g.m(0, 0));
  const Eigen::Vector2d v2(lambda - g.m(1, 1), g.m(1, 0));
  const Eigen::Vector2d v = v1.cwiseAbs().maxCoeff() >= v2.cwiseAbs().maxCoeff() ? v1 : v2;
  double xs = std::atan2(v[1], v[0]);
  xs -= kPi * std::floor(xs / kPi);
  return 2.0 * kPi * std::round((lift_eval(g, xs) - xs) / kPi);
}

struct MuEstimate {
  double value = 0.0;
  double error_bound = 0.0;
};

// Direct translation-number estimate 2 f~^N(0)/N with the classical
// |f~^N(0)/N - rho| <= pi/N bound; independent of the closed form above.
inline MuEstimate mu_iterated(const LiftedElement& g, long long iterations = 4096) {
  if (iterations < 1) throw DomainError("mu_iterated: iterations must be positive");
  double x = 0.0;
  for (long long i = 0; i < iterations; ++i) x = lift_eval(g, x);
  return {2.0 * x / static_cast<double>(iterations), 2.0 * kPi / static_cast<double>(iterations)};
}

// Least n with deck(n) exp(X) >= e. The canonical lift of exp(X) for
// symmetric X has displacement inside (-pi, pi), so one deck turn (+2 pi)
// always suffices; anything larger signals a lift bug.
inline long long reduce_to_me_bound(const AlgebraElement& x, long long n_max = 8) {
  const double scale = std::max(1.0, x.cwiseAbs().maxCoeff());
  if ((x - x.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw DomainError("reduce_to_me_bound: matrix must be symmetric");
  const LiftedElement e = exp_from_algebra(x);
  for (long long n = 0; n <= n_max; ++n) {
    try {
      if (is_positive(multiply(deck(n), e))) return n;
    } catch (const UncertainOrder&) {
      // an undecided level is not a certificate either way; try the next one
    }
  }
  throw BudgetExceeded("reduce_to_me_bound: no deck power certified positive");
}

inline Quasimorphism<LiftedElement> mu_quasimorphism() {
  Quasimorphism<LiftedElement> f;
  f.name = "mu";
  f.eval = [](const LiftedElement& g) { return mu(g); };
  f.defect_bound = 2.0 * kPi;
  f.homogeneous = true;
  return f;
}

// Product exp(P1) exp(tJ) exp(P2) with small hyperbolic factors and a full
// turn's worth of rotation; matrix norms stay safely inside double range
// even through ~400th powers.
inline LiftedElement random_element(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> p(-0.5, 0.5);
  std::uniform_real_distribution<double> angle(-6.0, 6.0);
  auto sym = [&]() {
    Mat2 s;
    const double a = p(rng), b = p(rng);
    s << a, b, b, -a;
    return s;
  };
  const Mat2 s1 = sym(), s2 = sym();
  const double t = angle(rng);
  return multiply(multiply(exp_from_algebra(s1), exp_j(t)), exp_from_algebra(s2));
}

// Same, optionally shifted by one deck turn either way: spreads mu across
// (-4pi-7, 4pi+7) so both sandwich implications get exercised.
inline LiftedElement random_element_wide(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> shift(-1, 1);
  return multiply(deck(shift(rng)), random_element(rng));
}

inline GroupModel<LiftedElement> sl2_model() {
  GroupModel<LiftedElement> m;
  m.name = "sl2tilde";
  m.identity = identity_element();
  m.multiply = [](const LiftedElement& a, const LiftedElement& b) { return multiply(a, b); };
  m.invert = [](const LiftedElement& a) { return inverse(a); };
  m.leq = [](const LiftedElement& a, const LiftedElement& b) { return is_positive(multiply(inverse(a), b)); };
  m.equal = [](const LiftedElement& a, const LiftedElement& b) {
    return (a.m - b.m).cwiseAbs().maxCoeff() <= 1e-9 && std::abs(a.tau - b.tau) <= 1e-9;
  };
  m.tolerance = 1e-9;
  m.certificate = SandwichCertificate<LiftedElement>{mu_quasimorphism(), 2.0 * kPi + 0.1};
  return m;
}

// Literals: "deck:<k>", "expJ:<t>", "expP:<a>,<b>" (symmetric traceless with
// diagonal a, off-diagonal b), joined by '*' for products.
inline LiftedElement parse_lifted_literal(const std::string& text) {
  if (text.empty()) throw ParseError("empty element literal");
  LiftedElement acc = identity_element();
  size_t pos = 0;
  while (pos <= text.size()) {
    const size_t star = std::min(text.find('*', pos), text.size());
    const std::string atom = text.substr(pos, star - pos);
    const size_t colon = atom.find(':');
    if (colon == std::string::npos) throw ParseError("bad element literal: '" + atom + "'");
    const std::string kind = atom.substr(0, colon);
    const std::string arg = atom.substr(colon + 1);
    try {
      size_t used = 0;
      if (kind == "deck") {
        const long long k = std::stoll(arg, &used);
        if (used != arg.size()) throw ParseError("");
        acc = multiply(acc, deck(k));
      } else if (kind == "expJ") {
        const double t = std::stod(arg, &used);
        if (used != arg.size()) throw ParseError("");
        acc = multiply(acc, exp_j(t));
      } else if (kind == "expP") {
        const size_t comma = arg.find(',');
        if (comma == std::string::npos) throw ParseError("");
        const std::string sa = arg.substr(0, comma), sb = arg.substr(comma + 1);
        size_t ua = 0, ub = 0;
        const double a = std::stod(sa, &ua), b = std::stod(sb, &ub);
        if (ua != sa.size() || ub != sb.size()) throw ParseError("");
        Mat2 x;
        x << a, b, b, -a;
        acc = multiply(acc, exp_from_algebra(x));
      } else {
        throw ParseError("");
      }
    } catch (const ParseError&) {
      throw ParseError("bad element literal: '" + atom + "'");
    } catch (const std::exception&) {
      throw ParseError("bad element literal: '" + atom + "'");
    }
    pos = star + 1;
    if (star == text.size()) break;
  }
  return acc;
}

}  // namespace og::sl2
