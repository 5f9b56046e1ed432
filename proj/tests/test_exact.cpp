#include "doctest.h"
#include "permclust/error.hpp"
#include "permclust/exact.hpp"

using namespace permclust;

TEST_CASE("ExactRatio is canonical") {
  const ExactRatio r(BigCount(75582), BigCount(208012));
  CHECK(r.to_string() == "117/322");
  CHECK(r.numerator() == 117);
  CHECK(r.denominator() == 322);
  CHECK(ExactRatio(BigCount(4), BigCount(2)).to_string() == "2");
  CHECK(ExactRatio(BigCount(-1), BigCount(-2)) == ExactRatio(BigCount(1), BigCount(2)));
  CHECK_THROWS_AS(ExactRatio(BigCount(1), BigCount(0)), DomainError);
  CHECK(ExactRatio::parse("6/8") == ExactRatio(BigCount(3), BigCount(4)));
  CHECK_THROWS_AS(ExactRatio::parse("1/0"), ParseError);
  CHECK_THROWS_AS(ExactRatio::parse("x"), ParseError);
}

TEST_CASE("ExactRatio arithmetic and order") {
  const ExactRatio a(BigCount(1), BigCount(3)), b(BigCount(1), BigCount(6));
  CHECK(a + b == ExactRatio(BigCount(1), BigCount(2)));
  CHECK(a - b == b);
  CHECK(a * b == ExactRatio(BigCount(1), BigCount(18)));
  CHECK(a / b == ExactRatio(2));
  CHECK(b < a);
  CHECK(abs(b - a) == b);
  CHECK_THROWS_AS(a / ExactRatio(0), DomainError);
}

TEST_CASE("decimal rendering") {
  CHECK(ExactRatio(BigCount(19), BigCount(42)).decimal() == "0.452380952380952");
  CHECK(ExactRatio(BigCount(1), BigCount(2)).decimal() == "0.5");
  CHECK(ExactRatio(BigCount(2), BigCount(3)).decimal(4) == "0.6667");
  const ExactRatio tiny(BigCount(1), BigCount(1) << 80);
  CHECK(tiny.decimal(3).find("e-25") != std::string::npos);
}

TEST_CASE("Sqrt2Number exact arithmetic") {
  const Sqrt2Number s = three_minus_two_sqrt2();
  const Sqrt2Number inv(mpq_class(3), mpq_class(2));
  CHECK(s * inv == Sqrt2Number(1));
  CHECK(s.conjugate() == inv);
  CHECK(inv / s == inv * inv);
  CHECK(s.pow(2) == Sqrt2Number(mpq_class(17), mpq_class(-12)));
  CHECK(s.pow(0) == Sqrt2Number(1));
  CHECK(s.sign() == 1);
  CHECK((s - Sqrt2Number(ExactRatio(BigCount(171572), BigCount(1000000)))).sign() == 1);
  CHECK((s - Sqrt2Number(ExactRatio(BigCount(171573), BigCount(1000000)))).sign() == -1);
  CHECK(Sqrt2Number(mpq_class(0), mpq_class(-1)).sign() == -1);
  CHECK(Sqrt2Number().sign() == 0);
  CHECK(std::abs(s.approx() - 0.171572875253810) < 1e-15);
  CHECK(s.decimal() == "0.17157287525381");
  CHECK(s.to_string() == "3-2*sqrt2");
  CHECK(inv.to_string() == "3+2*sqrt2");
  CHECK(abs(-s) == s);
  CHECK(s < inv);
  CHECK_THROWS_AS(s / Sqrt2Number(), DomainError);
}

TEST_CASE("Sqrt2Number parsing") {
  CHECK(Sqrt2Number::parse("8") == Sqrt2Number(8));
  CHECK(Sqrt2Number::parse("3+2*sqrt2") == Sqrt2Number(mpq_class(3), mpq_class(2)));
  CHECK(Sqrt2Number::parse("3 - 2*sqrt2") == three_minus_two_sqrt2());
  CHECK(Sqrt2Number::parse("-sqrt2") == Sqrt2Number(mpq_class(0), mpq_class(-1)));
  CHECK(Sqrt2Number::parse("1/2+sqrt2") == Sqrt2Number(mpq_class(1, 2), mpq_class(1)));
  CHECK(Sqrt2Number::parse("1/3*sqrt2") == Sqrt2Number(mpq_class(0), mpq_class(1, 3)));
  CHECK(Sqrt2Number::parse("-3-1/2*sqrt2") == Sqrt2Number(mpq_class(-3), mpq_class(-1, 2)));
  for (const Sqrt2Number& x : {three_minus_two_sqrt2(), Sqrt2Number(mpq_class(-5, 7), mpq_class(3, 4))})
    CHECK(Sqrt2Number::parse(x.to_string()) == x);
  CHECK_THROWS_AS(Sqrt2Number::parse("3+2sqrt2"), ParseError);
  CHECK_THROWS_AS(Sqrt2Number::parse("pi"), ParseError);
  CHECK_THROWS_AS(Sqrt2Number::parse(""), ParseError);
}
