#include <gtest/gtest.h>
#include <gmpxx.h>

#include "cellsheaf/random.hpp"
#include "cellsheaf/rational.hpp"

using cellsheaf::Rational;

TEST(Rational, NormalizesSignAndGcd) {
    EXPECT_EQ(Rational(6, -4).str(), "-3/2");
    EXPECT_EQ(Rational(0, 5).str(), "0");
    EXPECT_EQ(Rational(10, 5).str(), "2");
    EXPECT_TRUE(Rational(4, 2).is_integer());
    EXPECT_THROW(Rational(1, 0), std::exception);
}

TEST(Rational, ParsesFractionStrings) {
    EXPECT_EQ(Rational::parse("3/6"), Rational(1, 2));
    EXPECT_EQ(Rational::parse("-7"), Rational(-7));
    EXPECT_EQ(Rational::parse("123456789012345678901234567890/3").str(), "41152263004115226300411522630");
    EXPECT_THROW(Rational::parse("1/0"), std::exception);
    EXPECT_THROW(Rational::parse("x"), std::exception);
}

TEST(Rational, OverflowFallsBackToExactBigArithmetic) {
    Rational big(std::int64_t{1} << 62);
    Rational p = big * big * big;
    mpz_class expect = mpz_class(1) << 186;
    EXPECT_EQ(p.str(), expect.get_str());
    EXPECT_TRUE(p.is_big());
    // shrinking back below the limit returns to machine words
    Rational q = p / (big * big);
    EXPECT_EQ(q, big);
}

TEST(Rational, FieldOperationsAgreeWithGmpOnRandomInputs) {
    cellsheaf::Rng rng(11);
    for (int t = 0; t < 2000; ++t) {
        long an = rng.uniform(-(1L << 40), 1L << 40), ad = rng.uniform(1, 1L << 30);
        long bn = rng.uniform(-(1L << 40), 1L << 40), bd = rng.uniform(1, 1L << 30);
        Rational a(an, ad), b(bn, bd);
        mpq_class qa(mpz_class(std::to_string(an)), mpz_class(std::to_string(ad)));
        mpq_class qb(mpz_class(std::to_string(bn)), mpz_class(std::to_string(bd)));
        qa.canonicalize();
        qb.canonicalize();
        EXPECT_EQ((a + b).to_mpq(), mpq_class(qa + qb));
        EXPECT_EQ((a - b).to_mpq(), mpq_class(qa - qb));
        EXPECT_EQ((a * b).to_mpq(), mpq_class(qa * qb));
        if (!b.is_zero()) EXPECT_EQ((a / b).to_mpq(), mpq_class(qa / qb));
        EXPECT_EQ(a < b, qa < qb);
        EXPECT_EQ(a == b, qa == qb);
    }
}

TEST(Rational, StringRoundTrip) {
    cellsheaf::Rng rng(3);
    for (int t = 0; t < 200; ++t) {
        Rational a(rng.uniform(-1000, 1000), rng.uniform(1, 1000));
        EXPECT_EQ(Rational::parse(a.str()), a);
    }
}
