#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "favard/rng.hpp"
#include "favard/tiling.hpp"

using favard::Complex;
using favard::Rect;

namespace {
constexpr double kFourPiThirds = 4.0 * favard::kPi / 3.0;
}

TEST(MaxCofactor, OriginWhereEveryFactorIsThree) {
    for (int m : {1, 4, 7}) {
        auto res = favard::max_cofactor(0.37, m, Complex(0, 0));
        EXPECT_NEAR(res.value, favard::pow3(m), 1e-9 * favard::pow3(m));
    }
}

TEST(MaxCofactor, ZeroOfFactorZeroSelectsItsCofactor) {
    for (int m = 1; m <= 8; ++m) {
        auto res = favard::max_cofactor(0.5, m, Complex(kFourPiThirds, 0.0));
        EXPECT_EQ(res.k0, 0) << "m=" << m;
        EXPECT_GE(res.value, favard::pow3(-m)) << "m=" << m;
    }
}

TEST(MaxCofactor, GridFloorAroundTheZero) {
    const int m = 6;
    Rect r{kFourPiThirds - 0.1, kFourPiThirds + 0.1, -0.1, 0.1};
    auto scan = favard::tiling_scan(0.5, m, r);
    EXPECT_GE(scan.min_max_cofactor, favard::pow3(-m));
    EXPECT_EQ(scan.critical.size(), 1u);
    EXPECT_EQ(scan.critical.front(), 0);
}

TEST(CriticalIndices, EmptyAwayFromZeros) {
    auto crit = favard::critical_indices(0.5, 5, Rect{0.4, 0.6, -0.1, 0.1});
    EXPECT_TRUE(crit.empty());
}

TEST(CriticalIndices, NeverTwoOnSampledRectangles) {
    // Random rectangles along the dyadic-free window; uniqueness must hold on
    // every single one.
    std::mt19937_64 rng = favard::substream(401, 0);
    std::uniform_real_distribution<double> ut(0.05, 0.95), ux(0.5, 700.0);
    const int m = 6;
    const double delta = 0.05;
    int scans = 0;
    for (int trial = 0; trial < 120; ++trial) {
        double t = ut(rng);
        if (std::abs(t - 0.5) < favard::pow3(-m)) continue;
        double x0 = ux(rng);
        auto scan = favard::tiling_scan(t, m, Rect{x0 - delta, x0 + delta, -delta, delta});
        EXPECT_LE(scan.critical.size(), 1u) << "t=" << t << " x0=" << x0;
        ++scans;
    }
    EXPECT_GT(scans, 100);
}

TEST(RootStability, UnperturbedCubeRootsGiveThree) {
    for (int k : {1, 2, 5}) {
        auto s = favard::root_stability(0.0, 0.0, k, 6);
        EXPECT_NEAR(s.real_part, 3.0, 1e-9);
    }
}

TEST(RootStability, PerturbedWithinRangeStaysAboveTwo) {
    const double y = favard::pow3(-6);
    auto s = favard::root_stability(y, -y, 3, 6);
    EXPECT_GE(s.real_part, 2.0);
}

TEST(RootStability, GridSweepWithinLemmaRange) {
    const double c = 0.1;
    double worst = 1e300;
    for (int kp = 1; kp <= 6; ++kp) {
        const double cap = c * favard::pow3(-kp);
        const int grid = 11;
        for (int i = 0; i < grid; ++i)
            for (int j = 0; j < grid; ++j)
                for (int k = 1; k <= kp + 1; ++k) {
                    double y1 = -cap + 2.0 * cap * i / (grid - 1);
                    double y2 = -cap + 2.0 * cap * j / (grid - 1);
                    worst = std::min(worst,
                                     favard::root_stability(y1, y2, k, kp, c).real_part);
                }
    }
    EXPECT_GE(worst, 2.0);
    RecordProperty("stability_min", std::to_string(worst));
}

TEST(RootStability, SharpnessBeyondTheRange) {
    // k = k' + 5 can fall below 2; a found counterexample documents sharpness
    // (logged, never asserted as a bound).
    const int kp = 5;
    const double cap = 0.1 * favard::pow3(-kp);
    double worst = 1e300;
    for (int i = 0; i < 15; ++i)
        for (int j = 0; j < 15; ++j) {
            double y1 = -cap + 2.0 * cap * i / 14.0;
            double y2 = -cap + 2.0 * cap * j / 14.0;
            worst = std::min(worst, favard::root_stability(y1, y2, kp + 5, kp).real_part);
        }
    RecordProperty("beyond_range_min", std::to_string(worst));
    SUCCEED() << "beyond-range minimum " << worst;
}

TEST(RootStability, InfeasibleMagnitudesRejected) {
    // e^{y2} > 1 + e^{y1} violates the triangle condition.
    EXPECT_THROW(favard::root_stability(-0.9, 0.9, 1, 0, 1.0), std::domain_error);
    EXPECT_THROW(favard::root_stability(1.0, 0.0, 1, 4, 0.1), std::invalid_argument);
}

TEST(FactorDomination, ScaledCubeRootZeroDominates) {
    // z = 3^3 * (4 pi / 3): factor k' = 3 vanishes; factors 0..2 equal 3.
    const Complex z(27.0 * kFourPiThirds, 0.0);
    auto out = favard::factor_domination(0.5, z, 3, 3);
    EXPECT_TRUE(out.precondition_met);
    EXPECT_TRUE(out.pass);
    EXPECT_NEAR(out.min_factor, 3.0, 1e-9);
}

TEST(FactorDomination, VacuousAtOrigin) {
    auto out = favard::factor_domination(0.5, Complex(0, 0), 3, 2);
    EXPECT_FALSE(out.precondition_met);
    EXPECT_TRUE(out.pass);
}

TEST(FactorDomination, SweepAuditFindsNoViolations) {
    // The trigger only fires in the low band near real zeros of the k'
    // factor, and those exist exactly for the tiling directions
    // t = (3b - 1)/(3a + 1) with real zero x* = 2 pi (a + 1/3): there
    // e^{-i x*} and e^{-i t x*} are the two nontrivial cube roots of unity.
    std::mt19937_64 rng = favard::substream(409, 0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int triggered = 0;
    for (int a = 1; a <= 6; ++a) {
        for (int b = 1; 3 * b - 1 < 3 * a + 1; ++b) {
            const double t = static_cast<double>(3 * b - 1) / static_cast<double>(3 * a + 1);
            const double x_star = 2.0 * favard::kPi * (a + 1.0 / 3.0);
            ASSERT_LT(std::abs(favard::trinomial(Complex(t, 0.0), Complex(x_star, 0.0))), 1e-12);
            for (int k_prime : {2, 3}) {
                for (int k_star = 1; k_star <= k_prime; ++k_star) {
                    const double dphi =
                        std::abs(favard::trinomial_dz(Complex(t, 0.0), Complex(x_star, 0.0)));
                    const double dz_cap =
                        0.5 * 0.05 * favard::pow3(k_prime - k_star) / std::max(dphi, 1e-3);
                    for (int trial = 0; trial < 8; ++trial) {
                        Complex dz = std::polar(dz_cap * unit(rng), 2.0 * favard::kPi * unit(rng));
                        Complex z = Complex(x_star, 0.0) * favard::pow3(k_prime) + dz;
                        auto out = favard::factor_domination(t, z, k_prime, k_star);
                        if (out.precondition_met) {
                            ++triggered;
                            EXPECT_TRUE(out.pass)
                                << "t=" << t << " k'=" << k_prime << " k*=" << k_star;
                        }
                    }
                }
            }
        }
    }
    EXPECT_GT(triggered, 100);
}

TEST(SsvScan, EmptyWithoutCriticalIndex) {
    // Window far from zeros of any factor: no critical index, empty SSV.
    auto rep = favard::ssv_scan(0.5, 3, 1e-3, 0.3, 0.7);
    EXPECT_FALSE(rep.has_critical);
    EXPECT_TRUE(rep.ssv.empty());
    EXPECT_EQ(rep.interval_count, 0u);
}

TEST(SsvScan, HitsSitInsidePredictedNeighborhoods) {
    const int m = 4;
    // Align the scan grid with the factor-0 zero so the small-value set is
    // actually sampled (off-grid the product never dips under the cut).
    const double step = favard::pow3(-m) / 16.0;
    const double x_lo = kFourPiThirds - 259.0 * step;
    const double x_hi = x_lo + 518.0 * step;
    auto rep = favard::ssv_scan(0.5, m, 0.01, x_lo, x_hi, 5, step);
    EXPECT_TRUE(rep.has_critical);
    EXPECT_EQ(rep.critical_k, 0);
    ASSERT_FALSE(rep.ssv.empty());
    EXPECT_FALSE(rep.contained_report_vacuous);
    EXPECT_LE(rep.max_distance_to_zero, rep.predicted_radius);
    EXPECT_LE(rep.observed_constant, 1.0);
    RecordProperty("ssv_observed_constant", std::to_string(rep.observed_constant));
}

TEST(SsvScan, IntervalCountStaysBoundedAcrossParameters) {
    const int m = 3;
    std::size_t worst = 0;
    for (double t : {0.2, 0.35, 0.65, 0.8}) {
        auto rep = favard::ssv_scan(t, m, 1e-3, 1.0, 1.0 + 2.0 * favard::pow3(m));
        worst = std::max(worst, rep.interval_count);
    }
    EXPECT_LE(worst, static_cast<std::size_t>(8 * favard::pow3(m)));
    RecordProperty("ssv_interval_count_max", static_cast<int>(worst));
}
