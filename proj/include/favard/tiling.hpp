#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "favard/common.hpp"
#include "favard/intervals.hpp"
#include "favard/parallel.hpp"
#include "favard/trig.hpp"
#include "favard/zeros.hpp"

namespace favard {

// Factor values phi_tilde_k(z) = trinomial(t, 3^{-k} z) for k = 0..m.
inline std::vector<Complex> tiling_factors(double t, int m, Complex z) {
    std::vector<Complex> f(static_cast<std::size_t>(m) + 1);
    for (int k = 0; k <= m; ++k) f[static_cast<std::size_t>(k)] = trinomial(Complex(t, 0.0), z * pow3(-k));
    return f;
}

struct CofactorResult {
    double value = 0.0;  // max over k0 of |product excluding k0|
    int k0 = 0;
};

// All m+1 cofactors by prefix/suffix magnitude products, never dividing by a
// possibly vanishing factor.
inline CofactorResult max_cofactor(double t, int m, Complex z) {
    std::vector<Complex> f = tiling_factors(t, m, z);
    const std::size_t n = f.size();
    std::vector<double> mag(n);
    for (std::size_t i = 0; i < n; ++i) mag[i] = std::abs(f[i]);
    std::vector<double> prefix(n + 1, 1.0), suffix(n + 1, 1.0);
    for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] * mag[i];
    for (std::size_t i = n; i > 0; --i) suffix[i - 1] = suffix[i] * mag[i - 1];
    CofactorResult best;
    for (std::size_t i = 0; i < n; ++i) {
        double cof = prefix[i] * suffix[i + 1];
        if (cof > best.value) {
            best.value = cof;
            best.k0 = static_cast<int>(i);
        }
    }
    return best;
}

// One grid scan over a rectangle: per-factor minima, the set of critical
// indices (factors dipping under the threshold anywhere on the grid), and the
// worst max-cofactor over the grid. Grid rows are scanned in parallel and
// reduced in row order.
struct TilingScan {
    double t = 0.0;
    int m = 0;
    Rect rect;
    double threshold = 0.0;
    double min_max_cofactor = 0.0;
    Complex argmin;
    std::vector<double> factor_min;   // min over grid of |phi_tilde_k|
    std::vector<int> critical;        // k with factor_min[k] < threshold
    std::size_t grid_re = 0, grid_im = 0;
};

inline TilingScan tiling_scan(double t, int m, const Rect& rect, double threshold = 0.0,
                              double max_spacing = 0.0, const WorkerPool& pool = WorkerPool(1)) {
    TilingScan scan;
    scan.t = t;
    scan.m = m;
    scan.rect = rect;
    scan.threshold = threshold > 0.0 ? threshold : pow3(-m);
    const double half_w = 0.5 * std::max(rect.width(), rect.height());
    const double spacing = max_spacing > 0.0 ? max_spacing : half_w / 64.0;
    scan.grid_re = static_cast<std::size_t>(std::ceil(rect.width() / spacing)) + 1;
    scan.grid_im = static_cast<std::size_t>(std::ceil(rect.height() / spacing)) + 1;

    struct Row {
        double min_cof = 0.0;
        Complex argmin;
        std::vector<double> fmin;
    };
    std::vector<Row> rows(scan.grid_im);
    pool.for_each_index(scan.grid_im, [&](std::size_t j) {
        const std::size_t nf = static_cast<std::size_t>(m) + 1;
        Row row;
        row.fmin.assign(nf, std::numeric_limits<double>::infinity());
        row.min_cof = std::numeric_limits<double>::infinity();
        std::vector<double> mag(nf), prefix(nf + 1, 1.0), suffix(nf + 1, 1.0);
        const Complex tc(t, 0.0);
        double y = rect.im_lo + (rect.height() * static_cast<double>(j)) /
                                    static_cast<double>(scan.grid_im - 1 ? scan.grid_im - 1 : 1);
        for (std::size_t i = 0; i < scan.grid_re; ++i) {
            double x = rect.re_lo + (rect.width() * static_cast<double>(i)) /
                                        static_cast<double>(scan.grid_re - 1 ? scan.grid_re - 1 : 1);
            Complex z(x, y);
            for (std::size_t a = 0; a < nf; ++a) {
                mag[a] = std::abs(trinomial(tc, z * pow3(-static_cast<int>(a))));
                row.fmin[a] = std::min(row.fmin[a], mag[a]);
                prefix[a + 1] = prefix[a] * mag[a];
            }
            for (std::size_t a = nf; a > 0; --a) suffix[a - 1] = suffix[a] * mag[a - 1];
            double best = 0.0;
            for (std::size_t a = 0; a < nf; ++a) best = std::max(best, prefix[a] * suffix[a + 1]);
            if (best < row.min_cof) {
                row.min_cof = best;
                row.argmin = z;
            }
        }
        rows[j] = std::move(row);
    });

    scan.factor_min.assign(static_cast<std::size_t>(m) + 1, std::numeric_limits<double>::infinity());
    scan.min_max_cofactor = std::numeric_limits<double>::infinity();
    for (const Row& row : rows) {
        for (std::size_t a = 0; a < scan.factor_min.size(); ++a)
            scan.factor_min[a] = std::min(scan.factor_min[a], row.fmin[a]);
        if (row.min_cof < scan.min_max_cofactor) {
            scan.min_max_cofactor = row.min_cof;
            scan.argmin = row.argmin;
        }
    }
    for (std::size_t a = 0; a < scan.factor_min.size(); ++a)
        if (scan.factor_min[a] < scan.threshold) scan.critical.push_back(static_cast<int>(a));
    return scan;
}

inline std::vector<int> critical_indices(double t, int m, const Rect& rect,
                                         double threshold = 0.0,
                                         const WorkerPool& pool = WorkerPool(1)) {
    return tiling_scan(t, m, rect, threshold, 0.0, pool).critical;
}

// Stability of the cube-root configuration under magnitude perturbations:
// solves |w_j| = e^{y_j}, 1 + w1 + w2 = 0 and returns
// Re(1 + w1^{3^k} + w2^{3^k}).
struct RootStability {
    double real_part = 0.0;
    Complex w1, w2;
};

inline RootStability root_stability(double y1, double y2, int k, int k_prime,
                                    double perturbation_coeff = 1.0) {
    double cap = perturbation_coeff * pow3(-k_prime);
    if (std::abs(y1) > cap || std::abs(y2) > cap)
        throw std::invalid_argument("root_stability: |y_j| must be at most c 3^{-k'}");
    double e1 = std::exp(y1), e2 = std::exp(y2);
    double cos_theta = (e2 * e2 - 1.0 - e1 * e1) / (2.0 * e1);
    if (cos_theta < -1.0 || cos_theta > 1.0)
        throw std::domain_error("root_stability: no unit-sum solution for these magnitudes");
    double theta = std::acos(cos_theta);  // branch near +2 pi / 3
    RootStability out;
    out.w1 = std::polar(e1, theta);
    out.w2 = -1.0 - out.w1;
    // w^{3^k} via scaled log components; exponents stay bounded in the
    // lemma's range k <= k' + 1.
    double p = pow3(k);
    auto power = [&](Complex w, double y) {
        double ang = std::arg(w);
        return std::polar(std::exp(p * y), p * ang);
    };
    Complex a1 = power(out.w1, y1);
    Complex a2 = power(out.w2, std::log(std::abs(out.w2)));
    out.real_part = 1.0 + a1.real() + a2.real();
    return out;
}

// Direct check of the cascade bound: when factor k' is tiny at z, factors
// k'-k*..k'-1 must all have modulus at least 2.
struct FactorDomination {
    bool precondition_met = false;
    bool pass = true;  // vacuously true when the precondition fails
    double min_factor = 0.0;
    double trigger_value = 0.0;
};

inline FactorDomination factor_domination(double t, Complex z, int k_prime, int k_star,
                                          double c_delta = 0.05) {
    FactorDomination out;
    out.trigger_value = std::abs(trinomial(Complex(t, 0.0), z * pow3(-k_prime)));
    out.precondition_met = out.trigger_value < c_delta * pow3(-k_star);
    if (!out.precondition_met) return out;
    out.min_factor = std::numeric_limits<double>::infinity();
    for (int k = std::max(0, k_prime - k_star); k <= k_prime - 1; ++k)
        out.min_factor =
            std::min(out.min_factor, std::abs(trinomial(Complex(t, 0.0), z * pow3(-k))));
    out.pass = out.min_factor >= 2.0;
    return out;
}

// Real-axis scan for the set of small values of the full product, with the
// containment report against the zeros of the unique critical factor.
struct SsvScanReport {
    UnionOfIntervals ssv;
    std::size_t interval_count = 0;
    bool has_critical = false;
    int critical_k = -1;
    double predicted_radius = 0.0;       // 3^m (eps*)^{m/M}; constant-free shape
    double max_distance_to_zero = 0.0;
    double observed_constant = 0.0;      // max distance / predicted radius
    bool contained_report_vacuous = true;
    std::size_t points_scanned = 0;
};

inline SsvScanReport ssv_scan(double t, int m, double eps_star, double x_lo, double x_hi,
                              int blaschke_m = 5, double resolution = 0.0,
                              const WorkerPool& pool = WorkerPool(1)) {
    SsvScanReport rep;
    const double cut = std::pow(eps_star / 3.0, m);
    const double step = resolution > 0.0 ? resolution : pow3(-m) / 16.0;
    const std::size_t count = static_cast<std::size_t>(std::ceil((x_hi - x_lo) / step)) + 1;
    rep.points_scanned = count;

    std::vector<std::uint8_t> hit(count, 0);
    std::vector<double> factor_min_per_k(static_cast<std::size_t>(m) + 1,
                                         std::numeric_limits<double>::infinity());
    // Single pass; per-point factor minima folded afterwards in index order.
    std::vector<std::vector<double>> mins(count);
    pool.for_each_index(count, [&](std::size_t i) {
        double x = x_lo + static_cast<double>(i) * step;
        std::vector<Complex> f = tiling_factors(t, m, Complex(x, 0.0));
        double prod = 1.0;
        std::vector<double> local(f.size());
        for (std::size_t a = 0; a < f.size(); ++a) {
            local[a] = std::abs(f[a]);
            prod *= local[a];
        }
        if (prod < cut) hit[i] = 1;
        mins[i] = std::move(local);
    });
    for (const auto& local : mins)
        for (std::size_t a = 0; a < local.size(); ++a)
            factor_min_per_k[a] = std::min(factor_min_per_k[a], local[a]);

    std::vector<std::pair<double, double>> segs;
    for (std::size_t i = 0; i < count; ++i)
        if (hit[i]) {
            double x = x_lo + static_cast<double>(i) * step;
            segs.emplace_back(x - 0.5 * step, x + 0.5 * step);
        }
    rep.ssv = UnionOfIntervals(std::move(segs), 0.6 * step);
    rep.interval_count = rep.ssv.count();

    for (int k = 0; k <= m; ++k)
        if (factor_min_per_k[static_cast<std::size_t>(k)] < pow3(-m)) {
            rep.has_critical = true;
            rep.critical_k = k;
            break;
        }
    rep.predicted_radius = pow3(m) * std::pow(eps_star, static_cast<double>(m) / blaschke_m);
    if (rep.ssv.empty() || !rep.has_critical) return rep;

    // Zeros of the critical factor: zeros of the trinomial in the scaled
    // window, mapped back by 3^{k}.
    const double scale = pow3(rep.critical_k);
    Rect window{x_lo / scale - 1.0, x_hi / scale + 1.0, -1.0, 1.0};
    std::vector<Complex> zeros;
    for (Complex z : find_zeros(Complex(t, 0.0), window)) zeros.push_back(z * scale);
    if (zeros.empty()) return rep;

    rep.contained_report_vacuous = false;
    for (const auto& seg : rep.ssv.segments()) {
        for (double x : {seg.first, 0.5 * (seg.first + seg.second), seg.second}) {
            double dist = std::numeric_limits<double>::infinity();
            for (Complex z : zeros) dist = std::min(dist, std::abs(Complex(x, 0.0) - z));
            rep.max_distance_to_zero = std::max(rep.max_distance_to_zero, dist);
        }
    }
    rep.observed_constant = rep.max_distance_to_zero / rep.predicted_radius;
    return rep;
}

}  // namespace favard
