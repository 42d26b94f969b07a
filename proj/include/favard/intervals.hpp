#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "favard/common.hpp"

namespace favard {

// Sorted, pairwise-disjoint closed intervals [a,b]. Consecutive intervals are
// separated by more than merge_eps; anything closer is coalesced on build.
class UnionOfIntervals {
  public:
    UnionOfIntervals() = default;

    explicit UnionOfIntervals(std::vector<std::pair<double, double>> segments,
                              double merge_eps = 0.0)
        : merge_eps_(merge_eps) {
        for (auto& s : segments)
            if (s.second < s.first) std::swap(s.first, s.second);
        std::sort(segments.begin(), segments.end());
        for (const auto& s : segments) {
            if (!segments_.empty() && s.first <= segments_.back().second + merge_eps_) {
                segments_.back().second = std::max(segments_.back().second, s.second);
            } else {
                segments_.push_back(s);
            }
        }
    }

    const std::vector<std::pair<double, double>>& segments() const { return segments_; }
    double merge_eps() const { return merge_eps_; }
    std::size_t count() const { return segments_.size(); }
    bool empty() const { return segments_.empty(); }

    double length() const {
        double total = 0.0;
        for (const auto& s : segments_) total += s.second - s.first;
        return total;
    }

    bool contains(double x) const {
        auto it = std::upper_bound(segments_.begin(), segments_.end(),
                                   std::make_pair(x, std::numeric_limits<double>::infinity()));
        if (it == segments_.begin()) return false;
        --it;
        return x >= it->first && x <= it->second;
    }

  private:
    std::vector<std::pair<double, double>> segments_;
    double merge_eps_ = 0.0;
};

}  // namespace favard
