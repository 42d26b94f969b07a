#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "favard/common.hpp"

namespace favard {

// Iterated function system z -> ratio*z + centers[j]. Values are immutable
// after construction and safe to share across workers.
struct SimilaritySystem {
    double ratio = 1.0 / 3.0;
    std::vector<Complex> centers;
    double open_set_margin = 0.0;  // user-asserted; not verified here
    double base_radius = 1.0;
    int generation_cap = 14;

    SimilaritySystem(double ratio_, std::vector<Complex> centers_, double margin = 0.0,
                     double base_radius_ = 1.0, int cap = 14)
        : ratio(ratio_),
          centers(std::move(centers_)),
          open_set_margin(margin),
          base_radius(base_radius_),
          generation_cap(cap) {
        if (!(ratio > 0.0 && ratio < 1.0))
            throw std::invalid_argument("SimilaritySystem: ratio must lie in (0,1)");
        if (centers.size() < 2)
            throw std::invalid_argument("SimilaritySystem: at least 2 centers required");
    }

    std::size_t map_count() const { return centers.size(); }
};

// The three translation centers (1/3) e^{i pi (1/2 + 2a/3)}, a = -1, 0, 1,
// listed in ascending a. Map index j corresponds to a = j - 1.
inline SimilaritySystem gasket_system(int cap = 14) {
    std::vector<Complex> c;
    for (int a = -1; a <= 1; ++a) {
        double ang = kPi * (0.5 + 2.0 * a / 3.0);
        c.push_back(Complex(std::cos(ang), std::sin(ang)) / 3.0);
    }
    return SimilaritySystem(1.0 / 3.0, std::move(c), 0.0, 1.0, cap);
}

// Ratio-1/4 system whose attractor is the four-corner Cantor set in the unit
// square.
inline SimilaritySystem four_corner_system(int cap = 14) {
    std::vector<Complex> c = {{0.0, 0.0}, {0.75, 0.0}, {0.0, 0.75}, {0.75, 0.75}};
    return SimilaritySystem(0.25, std::move(c), 0.0, 1.0, cap);
}

namespace detail {
// Single Horner step shared by the recursive builder and per-index
// regeneration, so both paths produce bit-identical centers.
inline Complex compose_step(const Complex& center, double ratio, const Complex& inner) {
    return center + ratio * inner;
}
}  // namespace detail

// Generation-n cell centers with radius ratio^n * base_radius. Centers are in
// lexicographic order of the map word (outermost map is the most significant
// digit), so the word of centers[i] is the base-M expansion of i; no separate
// word array is stored.
class DiscCloud {
  public:
    DiscCloud() = default;

    DiscCloud(int generation, double radius, std::vector<Complex> centers,
              std::size_t map_count, double ratio)
        : generation_(generation),
          radius_(radius),
          centers_(std::move(centers)),
          map_count_(map_count),
          ratio_(ratio) {}

    int generation() const { return generation_; }
    double radius() const { return radius_; }
    const std::vector<Complex>& centers() const { return centers_; }
    std::size_t map_count() const { return map_count_; }
    double ratio() const { return ratio_; }

    // Map word of center i, outermost map first.
    std::vector<int> word(std::size_t i) const {
        std::vector<int> w(static_cast<std::size_t>(generation_));
        for (int k = generation_ - 1; k >= 0; --k) {
            w[static_cast<std::size_t>(k)] = static_cast<int>(i % map_count_);
            i /= map_count_;
        }
        return w;
    }

    std::size_t parent_index(std::size_t i) const { return i / map_count_; }

  private:
    int generation_ = 0;
    double radius_ = 1.0;
    std::vector<Complex> centers_ = {Complex(0.0, 0.0)};
    std::size_t map_count_ = 1;
    double ratio_ = 1.0;
};

inline std::size_t cell_count(const SimilaritySystem& sys, int n) {
    std::size_t count = 1;
    for (int k = 0; k < n; ++k) count *= sys.map_count();
    return count;
}

inline std::size_t cells_memory_estimate_bytes(const SimilaritySystem& sys, int n) {
    return cell_count(sys, n) * sizeof(Complex);
}

// All n-fold composition images of the base point 0 (the level-n cell
// centers), radius ratio^n * base_radius.
inline DiscCloud cells(const SimilaritySystem& sys, int n) {
    if (n < 0) throw std::invalid_argument("cells: generation must be nonnegative");
    if (n > sys.generation_cap) {
        throw resource_error("cells: generation " + std::to_string(n) +
                             " exceeds cap " + std::to_string(sys.generation_cap) +
                             " (estimated " +
                             std::to_string(cells_memory_estimate_bytes(sys, n)) +
                             " bytes of centers)");
    }
    std::vector<Complex> cur = {Complex(0.0, 0.0)};
    for (int level = 0; level < n; ++level) {
        std::vector<Complex> next(cur.size() * sys.map_count());
        for (std::size_t a = 0; a < sys.map_count(); ++a)
            for (std::size_t i = 0; i < cur.size(); ++i)
                next[a * cur.size() + i] = detail::compose_step(sys.centers[a], sys.ratio, cur[i]);
        cur = std::move(next);
    }
    return DiscCloud(n, int_pow(sys.ratio, n) * sys.base_radius, std::move(cur),
                     sys.map_count(), sys.ratio);
}

// Recomputes center i of generation n directly from its map word.
inline Complex regenerate_center(const SimilaritySystem& sys, int n, std::size_t index) {
    std::vector<int> digits(static_cast<std::size_t>(n));
    for (int k = n - 1; k >= 0; --k) {
        digits[static_cast<std::size_t>(k)] = static_cast<int>(index % sys.map_count());
        index /= sys.map_count();
    }
    Complex z(0.0, 0.0);
    for (int k = n - 1; k >= 0; --k)
        z = detail::compose_step(sys.centers[static_cast<std::size_t>(digits[static_cast<std::size_t>(k)])],
                                 sys.ratio, z);
    return z;
}

inline std::vector<Complex> gasket_centers(int n, int cap = 14) {
    SimilaritySystem sys = gasket_system(cap);
    return cells(sys, n).centers();
}

// Triangle of similarity centers with |p1 - p3| = 1; degeneracy is twice the
// triangle area and scales every quantitative bound.
struct TriangleConfig {
    Complex p1, p2, p3;
    double degeneracy = 0.0;
};

inline double twice_triangle_area(Complex p1, Complex p2, Complex p3) {
    return std::abs(std::imag((p2 - p1) * std::conj(p3 - p1)));
}

inline TriangleConfig make_triangle(Complex p1, Complex p2, Complex p3) {
    constexpr double tol = 1e-12;
    if (std::abs(std::abs(p3 - p1) - 1.0) > tol)
        throw std::invalid_argument("make_triangle: |p1 - p3| must equal 1");
    double delta = twice_triangle_area(p1, p2, p3);
    if (delta < tol)
        throw std::domain_error("make_triangle: degenerate (colinear) configuration");
    if (delta > 1.0 + tol)
        throw std::invalid_argument("make_triangle: degeneracy must lie in (0, 1]");
    return TriangleConfig{p1, p2, p3, delta};
}

inline double degeneracy(const TriangleConfig& cfg) { return cfg.degeneracy; }

// Ratio-1/3 system whose attractor has corners at the triangle's points
// (translation centers 2p/3 put the map fixed points at p).
inline SimilaritySystem triangle_system(const TriangleConfig& cfg, int cap = 14) {
    std::vector<Complex> c = {cfg.p1 * (2.0 / 3.0), cfg.p2 * (2.0 / 3.0), cfg.p3 * (2.0 / 3.0)};
    return SimilaritySystem(1.0 / 3.0, std::move(c), 0.0, 1.0, cap);
}

// Degenerate gasket preset: corners 0, 1/2 + i*p2_im, 1.
inline TriangleConfig degenerate_triangle(double p2_im) {
    return make_triangle(Complex(0.0, 0.0), Complex(0.5, p2_im), Complex(1.0, 0.0));
}

}  // namespace favard
