#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "favard/common.hpp"
#include "favard/parallel.hpp"
#include "favard/similarity.hpp"
#include "favard/step_function.hpp"

namespace favard {

inline constexpr double kDefaultMergeEpsRel = 1e-12;

// Scalar projection of z onto the direction theta.
inline double project(Complex z, double theta) {
    return std::real(z * Complex(std::cos(theta), -std::sin(theta)));
}

// Counting function of the cloud's projection: how many discs cover each
// point of the line in direction theta. Exact sweep over the 2*count disc
// endpoints; endpoints closer than merge_eps_rel * hull width are merged.
inline StepFunction multiplicity(const DiscCloud& cloud, double theta,
                                 double merge_eps_rel = kDefaultMergeEpsRel) {
    const double r = cloud.radius();
    const Complex rot(std::cos(theta), -std::sin(theta));
    std::vector<std::pair<double, std::int64_t>> events;
    events.reserve(2 * cloud.centers().size());
    double lo = 0.0, hi = 0.0;
    bool first = true;
    for (const Complex& c : cloud.centers()) {
        double p = std::real(c * rot);
        events.emplace_back(p - r, +1);
        events.emplace_back(p + r, -1);
        if (first || p - r < lo) lo = p - r;
        if (first || p + r > hi) hi = p + r;
        first = false;
    }
    double merge_eps = merge_eps_rel * (hi - lo);
    return StepFunction::from_events(std::move(events), merge_eps);
}

inline UnionOfIntervals support_of(const StepFunction& f, double merge_eps = 0.0) {
    return f.support(merge_eps);
}

// Pointwise sup over generations 0..N at a fixed angle.
inline StepFunction sup_multiplicity(const SimilaritySystem& sys, int n_max, double theta,
                                     double merge_eps_rel = kDefaultMergeEpsRel) {
    std::vector<StepFunction> fs;
    fs.reserve(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) fs.push_back(multiplicity(cells(sys, n), theta, merge_eps_rel));
    return StepFunction::pointwise_max(fs);
}

inline LevelSetReport level_set(const StepFunction& f, double threshold, bool strict = false) {
    LevelSetReport rep;
    rep.threshold = threshold;
    rep.set = f.level_set(threshold, strict);
    rep.measure = rep.set.length();
    return rep;
}

struct FavardResult {
    double value = 0.0;
    int theta_samples = 0;
    double support_min = 0.0;
    double support_max = 0.0;
};

enum class QuadratureKind { Midpoint, Simpson };

// Mean over directions of the projection support length, by composite
// midpoint (or Simpson) quadrature on [0, pi). Angles are distributed over
// the pool; the reduction runs in ascending-angle order.
inline FavardResult favard(const SimilaritySystem& sys, int n, int theta_samples,
                           QuadratureKind quad = QuadratureKind::Midpoint,
                           const WorkerPool& pool = WorkerPool(1),
                           double merge_eps_rel = kDefaultMergeEpsRel) {
    if (theta_samples < 8) throw std::invalid_argument("favard: need at least 8 angle samples");
    const DiscCloud cloud = cells(sys, n);
    const int s = theta_samples;
    auto support_len = [&](double theta) {
        return multiplicity(cloud, theta, merge_eps_rel).support().length();
    };
    FavardResult res;
    res.theta_samples = s;
    if (quad == QuadratureKind::Midpoint) {
        std::vector<double> lens = pool.map<double>(static_cast<std::size_t>(s), [&](std::size_t i) {
            return support_len((static_cast<double>(i) + 0.5) * kPi / s);
        });
        double sum = 0.0;
        res.support_min = lens[0];
        res.support_max = lens[0];
        for (double v : lens) {
            sum += v;
            res.support_min = std::min(res.support_min, v);
            res.support_max = std::max(res.support_max, v);
        }
        res.value = sum / s;
    } else {
        // Composite Simpson on [0, pi] with s panels (s even enforced).
        int panels = (s % 2 == 0) ? s : s + 1;
        std::vector<double> lens =
            pool.map<double>(static_cast<std::size_t>(panels) + 1, [&](std::size_t i) {
                return support_len(static_cast<double>(i) * kPi / panels);
            });
        double sum = lens.front() + lens.back();
        for (int i = 1; i < panels; ++i) sum += lens[static_cast<std::size_t>(i)] * (i % 2 ? 4.0 : 2.0);
        res.value = sum / (3.0 * panels);
        res.support_min = *std::min_element(lens.begin(), lens.end());
        res.support_max = *std::max_element(lens.begin(), lens.end());
    }
    return res;
}

// True when the high-multiplicity set is already small: |{f*_N >= K}| <= K^-exponent.
inline bool bad_direction(const SimilaritySystem& sys, double theta, double k_threshold,
                          int n_max, double bad_set_exponent = 3.0) {
    StepFunction fstar = sup_multiplicity(sys, n_max, theta);
    double measure = fstar.level_set(k_threshold, false).length();
    return measure <= std::pow(k_threshold, -bad_set_exponent);
}

// Empirical stacking constant |F_{4KM}| / (K |F_K| |F_M|) where
// F_L = {x : f*_N(x) > L}. A zero denominator is a vacuous outcome.
struct StackingOutcome {
    double ratio = 0.0;
    bool vacuous = false;
    double f_upper = 0.0;  // |F_{4KM}|
    double f_k = 0.0;      // |F_K|
    double f_m = 0.0;      // |F_M|
};

inline StackingOutcome stacking_ratio(const SimilaritySystem& sys, double theta, int n_max,
                                      double k, double m) {
    StepFunction fstar = sup_multiplicity(sys, n_max, theta);
    StackingOutcome out;
    out.f_upper = fstar.level_set(4.0 * k * m, true).length();
    out.f_k = fstar.level_set(k, true).length();
    out.f_m = fstar.level_set(m, true).length();
    if (out.f_k <= 0.0 || out.f_m <= 0.0) {
        out.vacuous = true;
        return out;
    }
    out.ratio = out.f_upper / (k * out.f_k * out.f_m);
    return out;
}

// Desk-scale bootstrap reading of the good-direction estimate: support length
// at generation min(cap, l*N), l = ceil(1/|F_K|) clamped by K^beta, reported
// against the 1/K shape.
struct BootstrapReport {
    int generation = 0;
    double measured_support = 0.0;
    double k_reciprocal = 0.0;
    double empirical_constant = 0.0;  // measured * K
    double f_k = 0.0;
    bool vacuous = false;
};

inline BootstrapReport bootstrap_check(const SimilaritySystem& sys, double theta, int n,
                                       double k, double beta) {
    BootstrapReport rep;
    rep.k_reciprocal = 1.0 / k;
    StepFunction fstar = sup_multiplicity(sys, n, theta);
    rep.f_k = fstar.level_set(k, true).length();
    if (rep.f_k <= 0.0) {
        rep.vacuous = true;
        rep.generation = sys.generation_cap;
    } else {
        double l = std::min(std::ceil(1.0 / rep.f_k), std::ceil(std::pow(k, beta)));
        double gen = l * static_cast<double>(n);
        rep.generation = static_cast<int>(std::min(gen, static_cast<double>(sys.generation_cap)));
    }
    StepFunction f = multiplicity(cells(sys, rep.generation), theta);
    rep.measured_support = f.support().length();
    rep.empirical_constant = rep.measured_support * k;
    return rep;
}

// Change of variables from the direction angle to the normalized parameter
// t = (c2 - c1)/(c3 - c1), where c_j are the projections of the triangle
// corners, permuted so c1 <= c2 <= c3.
struct ThetaToT {
    double t = 0.0;
    double scale = 0.0;              // c3 - c1
    std::array<int, 3> permutation;  // permutation[rank] = original index (0-based)
    double dt_dtheta = 0.0;
    double numerator = 0.0;          // constant in theta up to permutation flips
};

inline ThetaToT theta_to_t(const TriangleConfig& cfg, double theta) {
    const Complex rot(std::cos(theta), -std::sin(theta));
    std::array<Complex, 3> z = {cfg.p1 * rot, cfg.p2 * rot, cfg.p3 * rot};
    std::array<int, 3> idx = {0, 1, 2};
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        return std::real(z[static_cast<std::size_t>(a)]) < std::real(z[static_cast<std::size_t>(b)]);
    });
    const double c1 = std::real(z[static_cast<std::size_t>(idx[0])]);
    const double c2 = std::real(z[static_cast<std::size_t>(idx[1])]);
    const double c3 = std::real(z[static_cast<std::size_t>(idx[2])]);
    const double s1 = std::imag(z[static_cast<std::size_t>(idx[0])]);
    const double s2 = std::imag(z[static_cast<std::size_t>(idx[1])]);
    const double s3 = std::imag(z[static_cast<std::size_t>(idx[2])]);
    ThetaToT out;
    out.permutation = idx;
    out.scale = c3 - c1;
    if (out.scale <= 0.0)
        throw std::domain_error("theta_to_t: projected spread vanished (degenerate view)");
    out.t = (c2 - c1) / out.scale;
    out.numerator = (c3 - c1) * (s2 - s1) - (c2 - c1) * (s3 - s1);
    out.dt_dtheta = out.numerator / (out.scale * out.scale);
    return out;
}

}  // namespace favard
