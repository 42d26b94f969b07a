#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "favard/common.hpp"
#include "favard/intervals.hpp"

namespace favard {

// Integer-valued piecewise-constant function on the line, zero outside its
// hull. breakpoints has one more entry than values; values[i] is the value on
// (breakpoints[i], breakpoints[i+1]).
class StepFunction {
  public:
    StepFunction() = default;

    StepFunction(std::vector<double> breakpoints, std::vector<std::int64_t> values)
        : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
        if (breakpoints_.size() != values_.size() + 1)
            throw std::invalid_argument("StepFunction: breakpoints must outnumber values by one");
        canonicalize();
    }

    // Builds from +1/-1 endpoint events (interval sweep). Event positions
    // closer than merge_eps are coalesced before accumulation, so exact ties
    // at tiling angles produce a single breakpoint.
    static StepFunction from_events(std::vector<std::pair<double, std::int64_t>> events,
                                    double merge_eps) {
        if (events.empty()) return StepFunction();
        std::sort(events.begin(), events.end());
        std::vector<double> bps;
        std::vector<std::int64_t> deltas;
        bps.reserve(events.size());
        deltas.reserve(events.size());
        for (const auto& [pos, delta] : events) {
            if (!bps.empty() && pos <= bps.back() + merge_eps) {
                deltas.back() += delta;
            } else {
                bps.push_back(pos);
                deltas.push_back(delta);
            }
        }
        std::vector<std::int64_t> vals(deltas.size() > 0 ? deltas.size() - 1 : 0);
        std::int64_t level = 0;
        for (std::size_t i = 0; i + 1 < deltas.size(); ++i) {
            level += deltas[i];
            if (level < 0)
                throw invariant_violation("StepFunction: negative level during sweep");
            vals[i] = level;
        }
        return StepFunction(std::move(bps), std::move(vals));
    }

    const std::vector<double>& breakpoints() const { return breakpoints_; }
    const std::vector<std::int64_t>& values() const { return values_; }
    bool empty() const { return values_.empty(); }

    double hull_lo() const { return breakpoints_.empty() ? 0.0 : breakpoints_.front(); }
    double hull_hi() const { return breakpoints_.empty() ? 0.0 : breakpoints_.back(); }

    std::int64_t value_at(double x) const {
        if (breakpoints_.empty() || x < breakpoints_.front() || x > breakpoints_.back()) return 0;
        auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
        std::size_t gap = static_cast<std::size_t>(it - breakpoints_.begin());
        if (gap == 0) return values_.empty() ? 0 : values_.front();
        if (gap > values_.size()) return values_.empty() ? 0 : values_.back();
        return values_[gap - 1];
    }

    std::int64_t max_value() const {
        std::int64_t m = 0;
        for (auto v : values_) m = std::max(m, v);
        return m;
    }

    // Integral of the function.
    double mass() const {
        double total = 0.0;
        for (std::size_t i = 0; i < values_.size(); ++i)
            total += static_cast<double>(values_[i]) * (breakpoints_[i + 1] - breakpoints_[i]);
        return total;
    }

    // Integral of the square (exact L2 norm squared).
    double l2_squared() const {
        double total = 0.0;
        for (std::size_t i = 0; i < values_.size(); ++i)
            total += static_cast<double>(values_[i]) * static_cast<double>(values_[i]) *
                     (breakpoints_[i + 1] - breakpoints_[i]);
        return total;
    }

    // {x : f(x) >= threshold} (or > threshold when strict) as a merged union.
    UnionOfIntervals level_set(double threshold, bool strict = false,
                               double merge_eps = 0.0) const {
        std::vector<std::pair<double, double>> segs;
        for (std::size_t i = 0; i < values_.size(); ++i) {
            double v = static_cast<double>(values_[i]);
            bool in = strict ? (v > threshold) : (v >= threshold);
            if (!in) continue;
            if (!segs.empty() && segs.back().second == breakpoints_[i])
                segs.back().second = breakpoints_[i + 1];
            else
                segs.emplace_back(breakpoints_[i], breakpoints_[i + 1]);
        }
        return UnionOfIntervals(std::move(segs), merge_eps);
    }

    UnionOfIntervals support(double merge_eps = 0.0) const {
        return level_set(1.0, false, merge_eps);
    }

    // Pointwise maximum of several step functions on their merged grid.
    static StepFunction pointwise_max(const std::vector<StepFunction>& fs) {
        std::vector<double> grid;
        for (const auto& f : fs)
            grid.insert(grid.end(), f.breakpoints().begin(), f.breakpoints().end());
        std::sort(grid.begin(), grid.end());
        grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
        if (grid.size() < 2) return StepFunction();
        std::vector<std::int64_t> vals(grid.size() - 1, 0);
        // March one cursor per function across the merged grid.
        std::vector<std::size_t> cursor(fs.size(), 0);
        for (std::size_t g = 0; g + 1 < grid.size(); ++g) {
            double mid = 0.5 * (grid[g] + grid[g + 1]);
            std::int64_t best = 0;
            for (std::size_t j = 0; j < fs.size(); ++j) {
                const auto& bp = fs[j].breakpoints();
                std::size_t& c = cursor[j];
                while (c + 1 < bp.size() && bp[c + 1] <= mid) ++c;
                if (!bp.empty() && c + 1 < bp.size() && mid > bp[c] && mid < bp[c + 1])
                    best = std::max(best, fs[j].values()[c]);
            }
            vals[g] = best;
        }
        return StepFunction(std::move(grid), std::move(vals));
    }

  private:
    void canonicalize() {
        // Merge adjacent gaps with equal value and trim zero-value fringes.
        std::vector<double> bps;
        std::vector<std::int64_t> vals;
        bps.reserve(breakpoints_.size());
        vals.reserve(values_.size());
        for (std::size_t i = 0; i < values_.size(); ++i) {
            if (breakpoints_[i + 1] <= breakpoints_[i]) continue;  // drop empty gap
            if (!vals.empty() && vals.back() == values_[i]) {
                bps.back() = breakpoints_[i + 1];
                continue;
            }
            if (bps.empty()) bps.push_back(breakpoints_[i]);
            bps.push_back(breakpoints_[i + 1]);
            vals.push_back(values_[i]);
        }
        while (!vals.empty() && vals.front() == 0) {
            vals.erase(vals.begin());
            bps.erase(bps.begin());
        }
        while (!vals.empty() && vals.back() == 0) {
            vals.pop_back();
            bps.pop_back();
        }
        if (vals.empty()) bps.clear();
        breakpoints_ = std::move(bps);
        values_ = std::move(vals);
    }

    std::vector<double> breakpoints_;
    std::vector<std::int64_t> values_;
};

// Level-set measurement bundle used by the projection reports.
struct LevelSetReport {
    double threshold = 0.0;
    UnionOfIntervals set;
    double measure = 0.0;
};

}  // namespace favard
