#include "permclust/exact.hpp"

#include <cctype>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "permclust/error.hpp"

namespace permclust {

namespace {

constexpr mp_bitcnt_t kDecimalBits = 512;

std::string format_mpf(const mpf_class& x, int digits) {
  if (x == 0) return "0";
  const int len = gmp_snprintf(nullptr, 0, "%.*Fg", digits, x.get_mpf_t());
  std::vector<char> buf(static_cast<std::size_t>(len) + 1);
  gmp_snprintf(buf.data(), buf.size(), "%.*Fg", digits, x.get_mpf_t());
  return std::string(buf.data(), static_cast<std::size_t>(len));
}

}  // namespace

std::string format_decimal(const mpq_class& q, int digits) {
  mpf_class f(0, kDecimalBits);
  f = q;
  return format_mpf(f, digits);
}

ExactRatio::ExactRatio(const BigCount& num, const BigCount& den) : q_(num, den) {
  if (den == 0) throw DomainError("zero denominator");
  q_.canonicalize();
}

ExactRatio::ExactRatio(const mpq_class& q) : q_(q) { q_.canonicalize(); }

ExactRatio ExactRatio::parse(std::string_view text) {
  mpq_class q;
  const std::string s(text);
  if (s.empty() || q.set_str(s, 10) != 0 || q.get_den() == 0) throw ParseError("not a rational number: '" + s + "'");
  q.canonicalize();
  return ExactRatio(q);
}

std::string ExactRatio::to_string() const { return q_.get_str(); }

std::string ExactRatio::decimal(int digits) const { return format_decimal(q_, digits); }

ExactRatio operator/(const ExactRatio& x, const ExactRatio& y) {
  if (y.q_ == 0) throw DomainError("division by zero");
  return ExactRatio(mpq_class(x.q_ / y.q_));
}

ExactRatio abs(const ExactRatio& x) { return ExactRatio(mpq_class(::abs(x.value()))); }

// ---------------------------------------------------------------------------

Sqrt2Number Sqrt2Number::parse(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  constexpr std::string_view root = "sqrt2";
  if (s.size() < root.size() || s.compare(s.size() - root.size(), root.size(), root) != 0)
    return Sqrt2Number(ExactRatio::parse(s));
  std::string head = s.substr(0, s.size() - root.size());
  const bool scaled = !head.empty() && head.back() == '*';
  if (scaled) head.pop_back();
  std::size_t split = 0;
  for (std::size_t i = head.size(); i-- > 1;) {
    if (head[i] == '+' || head[i] == '-') {
      split = i;
      break;
    }
  }
  const std::string rational = head.substr(0, split);
  std::string coef = head.substr(split);
  if (!scaled) {
    if (coef.empty() || coef == "+") coef = "1";
    else if (coef == "-") coef = "-1";
    else throw ParseError("not a number of the form a+b*sqrt2: '" + std::string(text) + "'");
  } else if (!coef.empty() && coef.front() == '+') {
    coef.erase(0, 1);
  }
  try {
    return {rational.empty() ? mpq_class(0) : ExactRatio::parse(rational).value(), ExactRatio::parse(coef).value()};
  } catch (const ParseError&) {
    throw ParseError("not a number of the form a+b*sqrt2: '" + std::string(text) + "'");
  }
}

Sqrt2Number::Sqrt2Number(mpq_class rational, mpq_class radical) : a_(std::move(rational)), b_(std::move(radical)) {
  a_.canonicalize();
  b_.canonicalize();
}

int Sqrt2Number::sign() const {
  const int sa = sgn(a_), sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: compare a^2 with 2 b^2.
  const int c = cmp(mpq_class(a_ * a_), mpq_class(2 * b_ * b_));
  return c > 0 ? sa : c < 0 ? sb : 0;
}

Sqrt2Number Sqrt2Number::pow(unsigned e) const {
  Sqrt2Number result(1), base = *this;
  while (e > 0) {
    if (e & 1u) result = result * base;
    base = base * base;
    e >>= 1u;
  }
  return result;
}

Sqrt2Number operator+(const Sqrt2Number& x, const Sqrt2Number& y) {
  return {mpq_class(x.a_ + y.a_), mpq_class(x.b_ + y.b_)};
}

Sqrt2Number operator-(const Sqrt2Number& x, const Sqrt2Number& y) {
  return {mpq_class(x.a_ - y.a_), mpq_class(x.b_ - y.b_)};
}

Sqrt2Number operator*(const Sqrt2Number& x, const Sqrt2Number& y) {
  return {mpq_class(x.a_ * y.a_ + 2 * x.b_ * y.b_), mpq_class(x.a_ * y.b_ + x.b_ * y.a_)};
}

Sqrt2Number operator/(const Sqrt2Number& x, const Sqrt2Number& y) {
  const mpq_class norm = y.a_ * y.a_ - 2 * y.b_ * y.b_;
  if (norm == 0) throw DomainError("division by zero in Q(sqrt2)");
  const Sqrt2Number top = x * y.conjugate();
  return {mpq_class(top.a_ / norm), mpq_class(top.b_ / norm)};
}

std::string Sqrt2Number::to_string() const {
  if (b_ == 0) return a_.get_str();
  std::string out;
  if (a_ != 0) out = a_.get_str();
  if (b_ > 0 && !out.empty()) out += '+';
  if (b_ == -1) {
    out += "-";
  } else if (b_ != 1) {
    out += b_.get_str() + "*";
  }
  out += "sqrt2";
  return out;
}

std::string Sqrt2Number::decimal(int digits) const {
  mpf_class root(2, kDecimalBits), a(0, kDecimalBits), b(0, kDecimalBits);
  root = sqrt(root);
  a = a_;
  b = b_;
  mpf_class v(0, kDecimalBits);
  v = a + b * root;
  return format_mpf(v, digits);
}

double Sqrt2Number::approx() const { return std::stod(decimal(17)); }

Sqrt2Number abs(const Sqrt2Number& x) { return x.sign() < 0 ? -x : x; }

Sqrt2Number three_minus_two_sqrt2() { return {mpq_class(3), mpq_class(-2)}; }

}  // namespace permclust
