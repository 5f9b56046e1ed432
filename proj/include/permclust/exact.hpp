#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>
#include <string_view>

namespace permclust {

/// Exact non-negative counts.
using BigCount = mpz_class;

/// Reduced rational with positive denominator.
class ExactRatio {
 public:
  ExactRatio() = default;
  ExactRatio(const BigCount& num, const BigCount& den);
  explicit ExactRatio(const mpq_class& q);
  explicit ExactRatio(long v) : q_(v) {}

  static ExactRatio parse(std::string_view text);

  const mpq_class& value() const noexcept { return q_; }
  BigCount numerator() const { return q_.get_num(); }
  BigCount denominator() const { return q_.get_den(); }

  /// "p/q", or "p" when the denominator is 1.
  std::string to_string() const;
  /// 15 significant digits.
  std::string decimal(int digits = 15) const;
  double approx() const { return q_.get_d(); }

  friend ExactRatio operator+(const ExactRatio& x, const ExactRatio& y) { return ExactRatio(mpq_class(x.q_ + y.q_)); }
  friend ExactRatio operator-(const ExactRatio& x, const ExactRatio& y) { return ExactRatio(mpq_class(x.q_ - y.q_)); }
  friend ExactRatio operator*(const ExactRatio& x, const ExactRatio& y) { return ExactRatio(mpq_class(x.q_ * y.q_)); }
  friend ExactRatio operator/(const ExactRatio& x, const ExactRatio& y);

  friend bool operator==(const ExactRatio& x, const ExactRatio& y) { return x.q_ == y.q_; }
  friend std::strong_ordering operator<=>(const ExactRatio& x, const ExactRatio& y) {
    const int c = cmp(x.q_, y.q_);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

 private:
  mpq_class q_;
};

ExactRatio abs(const ExactRatio& x);

/// Elements a + b*sqrt(2) of Q(sqrt 2), with exact ordering.
class Sqrt2Number {
 public:
  Sqrt2Number() = default;
  Sqrt2Number(mpq_class rational, mpq_class radical);
  explicit Sqrt2Number(const ExactRatio& r) : a_(r.value()), b_(0) {}
  explicit Sqrt2Number(long v) : a_(v), b_(0) {}

  /// Accepts "q", "q+r*sqrt2", "q-sqrt2", "r*sqrt2" with rational q, r.
  static Sqrt2Number parse(std::string_view text);

  const mpq_class& rational_part() const noexcept { return a_; }
  const mpq_class& radical_part() const noexcept { return b_; }
  bool is_rational() const { return b_ == 0; }

  /// -1, 0 or +1, decided exactly.
  int sign() const;
  Sqrt2Number conjugate() const { return {a_, -b_}; }
  Sqrt2Number pow(unsigned e) const;

  /// "a+b*sqrt2", or the rational alone when b = 0.
  std::string to_string() const;
  std::string decimal(int digits = 15) const;
  double approx() const;

  friend Sqrt2Number operator+(const Sqrt2Number& x, const Sqrt2Number& y);
  friend Sqrt2Number operator-(const Sqrt2Number& x, const Sqrt2Number& y);
  friend Sqrt2Number operator-(const Sqrt2Number& x) { return {-x.a_, -x.b_}; }
  friend Sqrt2Number operator*(const Sqrt2Number& x, const Sqrt2Number& y);
  friend Sqrt2Number operator/(const Sqrt2Number& x, const Sqrt2Number& y);

  friend bool operator==(const Sqrt2Number& x, const Sqrt2Number& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
  friend std::strong_ordering operator<=>(const Sqrt2Number& x, const Sqrt2Number& y) {
    const int s = (x - y).sign();
    return s < 0 ? std::strong_ordering::less : s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

 private:
  mpq_class a_;
  mpq_class b_;
};

Sqrt2Number abs(const Sqrt2Number& x);

/// 3 - 2*sqrt(2).
Sqrt2Number three_minus_two_sqrt2();

/// Decimal rendering of a GMP rational at the output boundary.
std::string format_decimal(const mpq_class& q, int digits = 15);

}  // namespace permclust
