#pragma once

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <ostream>
#include <string>
#include <utility>

namespace og {

// Arbitrary-precision rational with only non-template constructors, so Eigen
// expression SFINAE never probes boost's converting-constructor machinery.
// Conversion from double is exact (doubles are dyadic rationals).
class Rational {
 public:
  using Rep = boost::multiprecision::cpp_rational;

  Rational() : v_(0) {}
  Rational(int n) : v_(n) {}
  Rational(long long n) : v_(n) {}
  Rational(long long num, long long den) : v_(Rep(num) / den) {}
  explicit Rational(Rep v) : v_(std::move(v)) {}
  explicit Rational(double d) : v_(d) {}

  const Rep& rep() const { return v_; }
  double to_double() const { return v_.convert_to<double>(); }
  std::string str() const { return v_.str(); }
  bool is_zero() const { return v_.is_zero(); }
  int sign() const { return v_.sign(); }

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(Rep(a.v_ + b.v_)); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(Rep(a.v_ - b.v_)); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(Rep(a.v_ * b.v_)); }
  friend Rational operator/(const Rational& a, const Rational& b) { return Rational(Rep(a.v_ / b.v_)); }
  Rational operator-() const { return Rational(Rep(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) { v_ /= o.v_; return *this; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.v_; }

 private:
  Rep v_;
};

inline Rational abs(const Rational& r) { return r < Rational(0) ? -r : r; }

using RationalMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using RationalVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

}  // namespace og

namespace Eigen {

template <>
struct NumTraits<og::Rational> : GenericNumTraits<og::Rational> {
  using Real = og::Rational;
  using NonInteger = og::Rational;
  using Nested = og::Rational;
  using Literal = long long;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 60,
    MulCost = 60,
  };
  // Exact scalar: comparisons carry no fuzz.
  static inline og::Rational epsilon() { return og::Rational(0); }
  static inline og::Rational dummy_precision() { return og::Rational(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
