#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "ordergrowth/errors.hpp"
#include "ordergrowth/feasibility.hpp"
#include "ordergrowth/group_model.hpp"
#include "ordergrowth/rational.hpp"

namespace og {

// Polyhedral order on (R^d, +): a <= b iff b - a lies in the cone cut out by
// the functional rows. Validation is exact; `margin` only cushions the
// floating-point instantiation.
template <class Scalar>
struct ConeOrder {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> functionals;  // one row per functional
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> interior;                  // strictly positive pairing witness
  Scalar margin{};

  Eigen::Index dim() const { return functionals.cols(); }

  bool member(const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& v) const {
    if (v.size() != functionals.cols()) throw DimensionMismatch("cone: vector has wrong dimension");
    const auto pair = (functionals * v).eval();
    for (Eigen::Index i = 0; i < pair.size(); ++i)
      if (pair[i] < -margin) return false;
    return true;
  }

  bool dominant(const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& v) const {
    if (v.size() != functionals.cols()) throw DimensionMismatch("cone: vector has wrong dimension");
    const auto pair = (functionals * v).eval();
    for (Eigen::Index i = 0; i < pair.size(); ++i)
      if (!(pair[i] > margin)) return false;
    return true;
  }
};

// Exact validation: pointed (kernel of the row stack is zero) and solid
// (some vector pairs strictly positively with every row). Both are decided
// in rational arithmetic, the witness is kept on the order.
inline ConeOrder<Rational> make_cone_order(const RationalMatrix& rows) {
  if (rows.rows() < 1 || rows.cols() < 1) throw ConeError("cone needs at least one functional and one coordinate");
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    bool all_zero = true;
    for (Eigen::Index j = 0; j < rows.cols(); ++j)
      if (!rows(i, j).is_zero()) all_zero = false;
    if (all_zero) throw ConeError("zero functional row");
  }
  if (rational_rank(rows) != rows.cols())
    throw ConeError("cone is not pointed: functionals do not span the dual space");
  RationalVector zero = RationalVector::Constant(rows.rows(), Rational(0));
  auto witness = strict_interior_point(rows, zero);
  if (!witness) throw ConeError("cone has empty interior: no vector pairs strictly positively with all functionals");
  ConeOrder<Rational> cone;
  cone.functionals = rows;
  cone.interior = *witness;
  cone.margin = Rational(0);
  return cone;
}

inline ConeOrder<double> to_double(const ConeOrder<Rational>& cone, double margin = 1e-9) {
  ConeOrder<double> out;
  out.functionals.resize(cone.functionals.rows(), cone.functionals.cols());
  for (Eigen::Index i = 0; i < cone.functionals.rows(); ++i)
    for (Eigen::Index j = 0; j < cone.functionals.cols(); ++j)
      out.functionals(i, j) = cone.functionals(i, j).to_double();
  out.interior.resize(cone.interior.size());
  for (Eigen::Index i = 0; i < cone.interior.size(); ++i) out.interior[i] = cone.interior[i].to_double();
  out.margin = margin;
  return out;
}

// max over rows of pairing(w) / pairing(v); exact when Scalar is Rational.
// The base must pair strictly positively with every row, otherwise no power
// bound exists and the ratio is meaningless.
template <class Scalar>
Scalar gamma_closed_form(const ConeOrder<Scalar>& cone, const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& v,
                         const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& w) {
  if (!cone.dominant(v)) throw DomainError("gamma closed form: base is not dominant for this cone");
  if (w.size() != cone.dim()) throw DimensionMismatch("cone: vector has wrong dimension");
  const auto pv = (cone.functionals * v).eval();
  const auto pw = (cone.functionals * w).eval();
  Scalar best = pw[0] / pv[0];
  for (Eigen::Index i = 1; i < pv.size(); ++i) {
    Scalar r = pw[i] / pv[i];
    if (best < r) best = r;
  }
  return best;
}

template <class Scalar>
double distance_closed_form(const ConeOrder<Scalar>& cone, const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& v,
                            const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& w) {
  if (!cone.dominant(v) || !cone.dominant(w))
    throw DomainError("distance closed form: both vectors must be dominant");
  const auto pv = (cone.functionals * v).eval();
  const auto pw = (cone.functionals * w).eval();
  double worst = 0.0;
  for (Eigen::Index i = 0; i < pv.size(); ++i) {
    double lv, lw;
    if constexpr (std::is_same_v<Scalar, Rational>) {
      lv = pv[i].to_double();
      lw = pw[i].to_double();
    } else {
      lv = pv[i];
      lw = pw[i];
    }
    worst = std::max(worst, std::abs(std::log(lw) - std::log(lv)));
  }
  return worst;
}

inline long long rational_ceil_ll(const Rational& r) {
  using boost::multiprecision::cpp_int;
  const cpp_int n = numerator(r.rep());
  const cpp_int d = denominator(r.rep());  // canonical form: d > 0
  cpp_int q = n / d;                       // truncation toward zero
  if (n % d != 0 && n > 0) ++q;
  if (q > cpp_int(std::numeric_limits<long long>::max()) || q < cpp_int(std::numeric_limits<long long>::min()))
    throw BudgetExceeded("ceil does not fit in long long");
  return q.convert_to<long long>();
}

inline GroupModel<Eigen::VectorXd> cone_model(const ConeOrder<double>& cone) {
  GroupModel<Eigen::VectorXd> m;
  const Eigen::Index d = cone.dim();
  m.name = "cone(" + std::to_string(d) + ")";
  m.identity = Eigen::VectorXd::Zero(d);
  m.multiply = [d](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    if (a.size() != d || b.size() != d) throw DimensionMismatch("cone model: vector has wrong dimension");
    return Eigen::VectorXd(a + b);
  };
  m.invert = [](const Eigen::VectorXd& a) { return Eigen::VectorXd(-a); };
  m.leq = [cone](const Eigen::VectorXd& a, const Eigen::VectorXd& b) { return cone.member(b - a); };
  m.equal = [](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    return (a - b).cwiseAbs().maxCoeff() <= 1e-12;
  };
  m.tolerance = cone.margin;
  return m;
}

inline GroupModel<RationalVector> cone_model(const ConeOrder<Rational>& cone) {
  GroupModel<RationalVector> m;
  const Eigen::Index d = cone.dim();
  m.name = "cone-exact(" + std::to_string(d) + ")";
  m.identity = RationalVector::Constant(d, Rational(0));
  m.multiply = [d](const RationalVector& a, const RationalVector& b) {
    if (a.size() != d || b.size() != d) throw DimensionMismatch("cone model: vector has wrong dimension");
    return RationalVector(a + b);
  };
  m.invert = [](const RationalVector& a) { return RationalVector(-a); };
  m.leq = [cone](const RationalVector& a, const RationalVector& b) { return cone.member(b - a); };
  m.equal = [](const RationalVector& a, const RationalVector& b) {
    for (Eigen::Index i = 0; i < a.size(); ++i)
      if (!(a[i] == b[i])) return false;
    return true;
  };
  m.tolerance = 0.0;
  return m;
}

// Literal forms: "3", "-7", "2/5", "0.125". Decimal expansions convert
// exactly (0.1 really is 1/10 here, not the nearest double).
inline Rational parse_rational_token(const std::string& tok) {
  using boost::multiprecision::cpp_int;
  size_t i = 0;
  bool neg = false;
  if (i < tok.size() && (tok[i] == '+' || tok[i] == '-')) neg = tok[i++] == '-';
  auto read_digits = [&](std::string& out) {
    while (i < tok.size() && tok[i] >= '0' && tok[i] <= '9') out.push_back(tok[i++]);
  };
  std::string whole;
  read_digits(whole);
  if (whole.empty()) throw ParseError("bad rational literal: '" + tok + "'");
  cpp_int num(whole), den(1);
  if (i < tok.size() && tok[i] == '/') {
    ++i;
    std::string d;
    read_digits(d);
    if (d.empty() || i != tok.size()) throw ParseError("bad rational literal: '" + tok + "'");
    den = cpp_int(d);
    if (den == 0) throw ParseError("zero denominator in '" + tok + "'");
  } else if (i < tok.size() && tok[i] == '.') {
    ++i;
    std::string frac;
    read_digits(frac);
    if (frac.empty() || i != tok.size()) throw ParseError("bad rational literal: '" + tok + "'");
    for (char c : frac) {
      num = num * 10 + (c - '0');
      den *= 10;
    }
  } else if (i != tok.size()) {
    throw ParseError("bad rational literal: '" + tok + "'");
  }
  Rational r{boost::multiprecision::cpp_rational(num, den)};
  return neg ? -r : r;
}

inline RationalVector parse_rational_vector(const std::string& text) {
  std::vector<Rational> vals;
  std::string cur;
  std::stringstream ss(text);
  while (std::getline(ss, cur, ',')) vals.push_back(parse_rational_token(cur));
  if (vals.empty()) throw ParseError("empty vector literal");
  RationalVector v(static_cast<Eigen::Index>(vals.size()));
  for (size_t i = 0; i < vals.size(); ++i) v[static_cast<Eigen::Index>(i)] = vals[i];
  return v;
}

inline Eigen::VectorXd to_double(const RationalVector& v) {
  Eigen::VectorXd out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = v[i].to_double();
  return out;
}

// One functional per non-comment line, whitespace-separated rational tokens,
// '#' starts a comment. All rows must have the same width.
inline RationalMatrix parse_cone_rows(std::istream& in) {
  std::vector<std::vector<Rational>> rows;
  std::string line;
  while (std::getline(in, line)) {
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::stringstream ss(line);
    std::string tok;
    std::vector<Rational> row;
    while (ss >> tok) row.push_back(parse_rational_token(tok));
    if (row.empty()) continue;
    if (!rows.empty() && row.size() != rows.front().size())
      throw ParseError("cone file rows have inconsistent widths");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("cone file has no functional rows");
  RationalMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows.front().size(); ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  return m;
}

inline ConeOrder<Rational> load_cone_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConeError("cannot open cone file: " + path);
  return make_cone_order(parse_cone_rows(in));
}

}  // namespace og
