#include <catch2/catch.hpp>
#include <krkit/qnum.hpp>

#include "test_util.hpp"

using namespace krkit;
using testutil::Rng;

namespace {
QRat qs(int k) { return QRat::qs_power(k); }
}

TEST_CASE("field arithmetic examples") {
    CHECK((qs(1) + QRat(1)) * (qs(1) - QRat(1)) == qs(2) - QRat(1));
    CHECK(QRat(1) / qs(1) == qs(-1));
    // (q^2 - q^-2)/(q - q^-1) = q + q^-1 = [2], with D = 1
    QRat lhs = (qs(2) - qs(-2)) / (qs(1) - qs(-1));
    CHECK(lhs == qs(1) + qs(-1));
    CHECK(lhs == qint(2));
    CHECK_THROWS_AS(QRat(1) / QRat(0), std::domain_error);
}

TEST_CASE("val0 and A membership") {
    QRat a = QRat(1) / (QRat(1) + qs(1));
    REQUIRE(a.val0().has_value());
    CHECK(*a.val0() == 0);
    CHECK(a.in_A());

    CHECK(*qs(-1).val0() == -1);
    CHECK_FALSE(qs(-1).in_A());

    QRat two_bracket = qs(1) + qs(-1);
    CHECK(*two_bracket.val0() == -1);

    CHECK_FALSE(QRat(0).val0().has_value());
    CHECK(QRat(0).in_A());
}

TEST_CASE("order_cmp implements the series-leading-coefficient order") {
    // q_s^-1 - 5 has leading coefficient +1 at order -1
    CHECK(order_cmp(qs(-1), QRat(5)) == Ord::greater);
    CHECK(order_cmp(QRat(0), qs(1)) == Ord::less);
    Rng rng(7);
    QRat f = testutil::random_qrat(rng);
    CHECK(order_cmp(f, f) == Ord::equal);
}

TEST_CASE("order_cmp is a total order compatible with addition") {
    Rng rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        QRat f = testutil::random_qrat(rng);
        QRat g = testutil::random_qrat(rng);
        QRat h = testutil::random_qrat(rng);
        Ord fg = order_cmp(f, g);
        Ord gf = order_cmp(g, f);
        // trichotomy
        if (fg == Ord::equal) {
            CHECK(gf == Ord::equal);
            CHECK(f == g);
        } else {
            CHECK(gf == (fg == Ord::less ? Ord::greater : Ord::less));
        }
        // transitivity
        if (order_cmp(f, g) != Ord::less && order_cmp(g, h) != Ord::less)
            CHECK(order_cmp(f, h) != Ord::less);
        // translation invariance
        CHECK(order_cmp(f + h, g + h) == fg);
    }
}

TEST_CASE("field axioms on random samples") {
    Rng rng(1234);
    for (int trial = 0; trial < 120; ++trial) {
        QRat a = testutil::random_qrat(rng);
        QRat b = testutil::random_qrat(rng);
        QRat c = testutil::random_qrat(rng);
        CHECK(a + b == b + a);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a - a == QRat(0));
        if (!a.is_zero()) {
            CHECK(a / a == QRat(1));
            CHECK(a * (QRat(1) / a) == QRat(1));
        }
    }
}

TEST_CASE("A is closed under addition and multiplication") {
    Rng rng(99);
    for (int trial = 0; trial < 120; ++trial) {
        QRat a = testutil::random_A_member(rng);
        QRat b = testutil::random_A_member(rng);
        REQUIRE(a.in_A());
        REQUIRE(b.in_A());
        CHECK((a + b).in_A());
        CHECK((a * b).in_A());
    }
}

TEST_CASE("val0 is additive under multiplication") {
    Rng rng(7);
    for (int trial = 0; trial < 120; ++trial) {
        QRat a = testutil::random_nonzero_qrat(rng);
        QRat b = testutil::random_nonzero_qrat(rng);
        CHECK(*(a * b).val0() == *a.val0() + *b.val0());
    }
}

TEST_CASE("q-binomials") {
    CHECK(qbinom(2, 1) == qint(2));
    CHECK(qbinom(2, 1) == qs(1) + qs(-1));
    // [3] expanded
    CHECK(qbinom(3, 1) == qs(2) + QRat(1) + qs(-2));
    // negative upper argument via the product formula: [-1]/[1]! = -1
    CHECK(qbinom(-1, 1) == QRat(-1));
    CHECK(qbinom(5, 0) == QRat(1));
    CHECK(qbinom(2, 5) == QRat(0));
    // node_power scales the variable
    CHECK(qbinom(2, 1, 2) == qs(2) + qs(-2));
}

TEST_CASE("q-binomials are bar-invariant Laurent polynomials") {
    for (int m = 0; m <= 8; ++m)
        for (int n = 0; n <= m; ++n) {
            QRat b = qbinom(m, n);
            CHECK(b.den() == LaurentPoly::constant(1));
            CHECK(b.bar() == b);
        }
}

TEST_CASE("bar is an involutive automorphism") {
    QRat two_bracket = qs(1) + qs(-1);
    CHECK(two_bracket.bar() == two_bracket);
    CHECK(qs(1).bar() == qs(-1));
    Rng rng(2024);
    for (int trial = 0; trial < 80; ++trial) {
        QRat a = testutil::random_qrat(rng);
        QRat b = testutil::random_qrat(rng);
        CHECK(a.bar().bar() == a);
        CHECK((a * b).bar() == a.bar() * b.bar());
        CHECK((a + b).bar() == a.bar() + b.bar());
    }
}

TEST_CASE("string rendering uses q when D divides the exponent") {
    QRat two_bracket = qs(1) + qs(-1);
    CHECK(two_bracket.str(1) == "q + q^-1");
    QRat f = qs(2) + qs(1);  // with D = 2: q + q_s
    CHECK(f.str(2) == "q + q_s");
    CHECK(QRat(0).str() == "0");
}
