#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "favard/rng.hpp"
#include "favard/trig.hpp"

using favard::Complex;

TEST(Phi, UnityAtOrigin) {
    for (double t : {0.0, 0.3, 0.5, 1.0})
        EXPECT_NEAR(std::abs(favard::phi(Complex(t, 0), Complex(0, 0)) - 1.0), 0.0, 1e-15);
}

TEST(Phi, CubeRootsOfUnityZero) {
    Complex v = favard::phi(Complex(0.5, 0), Complex(4.0 * favard::kPi / 3.0, 0));
    EXPECT_NEAR(std::abs(v), 0.0, 1e-15);
}

TEST(Phi, MinusOneThirdAtPiWhenTIsOne) {
    Complex v = favard::phi(Complex(1.0, 0), Complex(favard::kPi, 0));
    EXPECT_NEAR(std::abs(v - Complex(-1.0 / 3.0, 0.0)), 0.0, 1e-15);
}

TEST(Phi, ModulusAtMostOneOnRandomRealSamples) {
    std::mt19937_64 rng = favard::substream(7, 0);
    std::uniform_real_distribution<double> ut(0.0, 1.0), ux(-1e4, 1e4);
    for (int i = 0; i < 100000; ++i) {
        double t = ut(rng), x = ux(rng);
        EXPECT_LE(std::abs(favard::phi(Complex(t, 0), Complex(x, 0))), 1.0 + 1e-12);
    }
}

TEST(ProductSplit, AllPartsOneAtOrigin) {
    auto s = favard::product_split(Complex(0.37, 0), 9, 3, 2);
    for (const auto* p : {&s.full, &s.p1, &s.p2, &s.p1_sharp, &s.p1_flat})
        EXPECT_NEAR(std::abs(favard::product_eval(*p, Complex(0, 0)) - 1.0), 0.0, 1e-15);
}

TEST(ProductSplit, IdentitiesHoldToTolerance) {
    auto check = [](double t, int n, int m, int ell, double x) {
        auto s = favard::product_split(Complex(t, 0), n, m, ell);
        Complex full = favard::product_eval(s.full, Complex(x, 0));
        Complex p1 = favard::product_eval(s.p1, Complex(x, 0));
        Complex p2 = favard::product_eval(s.p2, Complex(x, 0));
        Complex sharp = favard::product_eval(s.p1_sharp, Complex(x, 0));
        Complex flat = favard::product_eval(s.p1_flat, Complex(x, 0));
        EXPECT_NEAR(std::abs(p1 * p2 - full), 0.0, 1e-12 * std::max(1.0, std::abs(full)));
        EXPECT_NEAR(std::abs(sharp * flat - p1), 0.0, 1e-12 * std::max(1.0, std::abs(p1)));
    };
    check(0.5, 6, 2, 2, 100.0);
    std::mt19937_64 rng = favard::substream(11, 0);
    std::uniform_real_distribution<double> ut(0.0, 1.0), ux(-3000.0, 3000.0);
    for (int i = 0; i < 500; ++i) check(ut(rng), 10, 3, 2, ux(rng));
}

TEST(ProductSplit, RejectsBadIndexRanges) {
    EXPECT_THROW(favard::product_split(Complex(0.5, 0), 4, 3, 2), std::invalid_argument);
    EXPECT_THROW(favard::product_split(Complex(0.5, 0), 3, -1, 1), std::invalid_argument);
}

TEST(ProductSplit, FullProductModulusAtMostOne) {
    std::mt19937_64 rng = favard::substream(13, 0);
    std::uniform_real_distribution<double> ut(0.0, 1.0), ux(-1e4, 1e4);
    favard::TrigProduct p{Complex(0, 0), 1, 12};
    for (int i = 0; i < 100000; ++i) {
        p.t = Complex(ut(rng), 0.0);
        EXPECT_LE(std::abs(favard::product_eval(p, Complex(ux(rng), 0))), 1.0 + 1e-12);
    }
}

TEST(ProductSplit, IndexShiftFunctionalEquation) {
    // prod_{k=1}^{N} phi(3^{-k} x) = phi(x/3) * prod_{k=2}^{N} phi(3^{-k} x).
    std::mt19937_64 rng = favard::substream(17, 0);
    std::uniform_real_distribution<double> ut(0.0, 1.0), ux(-500.0, 500.0);
    for (int i = 0; i < 200; ++i) {
        Complex t(ut(rng), 0.0);
        Complex x(ux(rng), 0.0);
        favard::TrigProduct whole{t, 1, 8};
        favard::TrigProduct tail{t, 2, 8};
        Complex lhs = favard::product_eval(whole, x);
        Complex rhs = favard::phi(t, x / 3.0) * favard::product_eval(tail, x);
        EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-13);
    }
}

TEST(Riesz, FactorEndpoints) {
    EXPECT_DOUBLE_EQ(favard::riesz_factor(0.0), 1.0);
    EXPECT_NEAR(favard::riesz_factor(favard::kPi), 5.0 / 9.0, 1e-15);
}

TEST(Riesz, FactorsAndProductStayInRange) {
    favard::RieszProduct r{1, 6};
    std::mt19937_64 rng = favard::substream(19, 0);
    std::uniform_real_distribution<double> ux(-1e5, 1e5);
    double lo = favard::int_pow(5.0 / 9.0, r.factor_count());
    for (int i = 0; i < 20000; ++i) {
        double x = ux(rng);
        double v = favard::riesz_eval(r, x);
        EXPECT_GE(v, lo - 1e-12);
        EXPECT_LE(v, 1.0 + 1e-12);
        double f = favard::riesz_factor(x);
        EXPECT_GE(f, 5.0 / 9.0 - 1e-15);
        EXPECT_LE(f, 1.0 + 1e-15);
    }
}

TEST(Riesz, SingleFactorMeanBySimpleIntegration) {
    favard::RieszProduct r{1, 1};
    // Direct integral over one period: cosine averages to zero.
    EXPECT_NEAR(favard::riesz_period_mean(r), 7.0 / 9.0, 1e-10);
}

TEST(Riesz, FiveFactorMeanMatchesClosedForm) {
    favard::RieszProduct r{1, 5};
    double mean = favard::riesz_period_mean(r);
    double exact = favard::riesz_period_mean_exact(r);
    EXPECT_NEAR(std::abs(mean - exact) / exact, 0.0, 1e-6);
    EXPECT_NEAR(exact, std::pow(7.0 / 9.0, 5.0), 1e-15);
}

TEST(Riesz, PeriodicityOfProduct) {
    favard::RieszProduct r{2, 5};
    double period = r.period();
    EXPECT_DOUBLE_EQ(period, 2.0 * favard::kPi * 243.0);
    std::mt19937_64 rng = favard::substream(23, 0);
    std::uniform_real_distribution<double> ux(-1e4, 1e4);
    for (int i = 0; i < 2000; ++i) {
        double x = ux(rng);
        EXPECT_NEAR(favard::riesz_eval(r, x + period), favard::riesz_eval(r, x), 1e-12);
    }
}

TEST(RieszDomination, EqualityAtOrigin) {
    EXPECT_TRUE(favard::riesz_dominates(0.7, 0.0));
    double lhs = std::norm(favard::phi(Complex(0.7, 0), Complex(0, 0)));
    EXPECT_DOUBLE_EQ(lhs, 1.0);
}

TEST(RieszDomination, ZeroOfPhiTriviallyDominated) {
    EXPECT_TRUE(favard::riesz_dominates(0.5, 4.0 * favard::kPi / 3.0));
}

TEST(RieszDomination, RandomAuditClean) {
    std::mt19937_64 rng = favard::substream(29, 0);
    std::uniform_real_distribution<double> ut(0.0, 1.0), ux(-1e4, 1e4);
    int violations = 0;
    for (int i = 0; i < 200000; ++i)
        if (!favard::riesz_dominates(ut(rng), ux(rng))) ++violations;
    EXPECT_EQ(violations, 0);
}

TEST(RieszDomination, ProductFormHolds) {
    std::mt19937_64 rng = favard::substream(31, 0);
    std::uniform_real_distribution<double> ut(0.0, 1.0), ux(-1e4, 1e4);
    for (int i = 0; i < 2000; ++i) {
        double t = ut(rng);
        favard::TrigProduct flat{Complex(t, 0), 3, 7};
        EXPECT_TRUE(favard::riesz_dominates_product(t, flat, ux(rng)));
    }
}
