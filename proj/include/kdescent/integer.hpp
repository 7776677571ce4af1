#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <Eigen/Dense>
#include <cstdint>
#include <ostream>
#include <string>

namespace kdescent {

/* Arbitrary-precision integer scalar for Eigen matrices.  A thin wrapper
 * around cpp_int: the wrapper keeps conversions narrow so Eigen's
 * expression machinery never collides with boost's greedy constructor
 * templates. */
class Integer {
 public:
  using Raw = boost::multiprecision::cpp_int;

  Integer() = default;
  Integer(int v) : v_(v) {}
  Integer(long v) : v_(v) {}
  Integer(long long v) : v_(v) {}
  explicit Integer(const Raw& v) : v_(v) {}
  explicit Integer(const std::string& decimal) : v_(decimal) {}

  const Raw& raw() const { return v_; }

  Integer& operator+=(const Integer& o) { v_ += o.v_; return *this; }
  Integer& operator-=(const Integer& o) { v_ -= o.v_; return *this; }
  Integer& operator*=(const Integer& o) { v_ *= o.v_; return *this; }
  Integer& operator/=(const Integer& o) { v_ /= o.v_; return *this; }
  Integer& operator%=(const Integer& o) { v_ %= o.v_; return *this; }

  friend Integer operator+(const Integer& a, const Integer& b) { return Integer(a.v_ + b.v_); }
  friend Integer operator-(const Integer& a, const Integer& b) { return Integer(a.v_ - b.v_); }
  friend Integer operator*(const Integer& a, const Integer& b) { return Integer(a.v_ * b.v_); }
  friend Integer operator/(const Integer& a, const Integer& b) { return Integer(a.v_ / b.v_); }
  friend Integer operator%(const Integer& a, const Integer& b) { return Integer(a.v_ % b.v_); }
  Integer operator-() const { return Integer(-v_); }

  friend bool operator==(const Integer& a, const Integer& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Integer& a, const Integer& b) { return a.v_ != b.v_; }
  friend bool operator<(const Integer& a, const Integer& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Integer& a, const Integer& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Integer& a, const Integer& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Integer& a, const Integer& b) { return a.v_ >= b.v_; }

  friend Integer abs(const Integer& a) { return Integer(boost::multiprecision::abs(a.v_)); }
  friend Integer gcd(const Integer& a, const Integer& b) { return Integer(boost::multiprecision::gcd(a.v_, b.v_)); }

  bool is_zero() const { return v_.is_zero(); }
  int sign() const { return v_.sign(); }

  bool fits_int64() const {
    return v_ >= Raw(INT64_MIN) && v_ <= Raw(INT64_MAX);
  }
  std::int64_t to_int64() const { return v_.convert_to<std::int64_t>(); }
  std::string to_string() const { return v_.str(); }

  friend std::ostream& operator<<(std::ostream& os, const Integer& a) { return os << a.v_; }

 private:
  Raw v_{};
};

}  // namespace kdescent

/* The specialization must precede any instantiation of Matrix<Integer>. */
namespace Eigen {
template <>
struct NumTraits<kdescent::Integer> {
  using Real = kdescent::Integer;
  using NonInteger = kdescent::Integer;
  using Nested = kdescent::Integer;
  using Literal = kdescent::Integer;
  enum {
    IsComplex = 0,
    IsInteger = 1,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 30,
    MulCost = 60
  };
  static inline Real epsilon() { return kdescent::Integer(0); }
  static inline Real dummy_precision() { return kdescent::Integer(0); }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen

namespace kdescent {

/* floor division: a = q*b + r with 0 <= r < |b| */
inline void euclidean_divmod(const Integer& a, const Integer& b, Integer& q, Integer& r) {
  q = a / b;
  r = a - q * b;
  if (r < 0) {
    if (b > 0) { q -= 1; r += b; }
    else       { q += 1; r -= b; }
  }
}

/* quotient minimizing |a - q*b|; used by the normal-form pivoting to keep
 * entries small */
inline Integer nearest_quotient(const Integer& a, const Integer& b) {
  Integer q, r;
  euclidean_divmod(a, b, q, r);
  Integer ab = abs(b);
  if (r + r > ab) q += (b > 0 ? Integer(1) : Integer(-1));
  return q;
}

inline bool divides(const Integer& d, const Integer& a) {
  if (d.is_zero()) return a.is_zero();
  return (a % d).is_zero();
}

using MatrixXZ = Eigen::Matrix<Integer, Eigen::Dynamic, Eigen::Dynamic>;
using VectorXZ = Eigen::Matrix<Integer, Eigen::Dynamic, 1>;
using Index = Eigen::Index;

inline bool is_zero(const MatrixXZ& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (!m(i, j).is_zero()) return false;
  return true;
}

inline bool equal(const MatrixXZ& a, const MatrixXZ& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

inline MatrixXZ zeros(Index rows, Index cols) {
  MatrixXZ m(rows, cols);
  m.setConstant(Integer(0));
  return m;
}

inline MatrixXZ identity(Index n) {
  MatrixXZ m = zeros(n, n);
  for (Index i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

/* [A | B] side by side; rows must agree */
inline MatrixXZ hcat(const MatrixXZ& a, const MatrixXZ& b) {
  MatrixXZ m(a.rows(), a.cols() + b.cols());
  m.leftCols(a.cols()) = a;
  m.rightCols(b.cols()) = b;
  return m;
}

inline MatrixXZ vcat(const MatrixXZ& a, const MatrixXZ& b) {
  MatrixXZ m(a.rows() + b.rows(), a.cols());
  m.topRows(a.rows()) = a;
  m.bottomRows(b.rows()) = b;
  return m;
}

}  // namespace kdescent
