#pragma once

#include <cmath>
#include <cstdint>
#include <functional>

#include "favard/common.hpp"

namespace favard {

struct PanelBudget {
    std::int64_t panels = 0;
    double panel_width = 0.0;
};

// Composite Simpson over [a, b] with panel width at most max_panel_width.
// Oscillatory integrands pass max_panel_width <= shortest local period / 8.
template <typename F>
double integrate_panels(F&& f, double a, double b, double max_panel_width,
                        PanelBudget* budget = nullptr) {
    if (b <= a) return 0.0;
    std::int64_t panels = static_cast<std::int64_t>(std::ceil((b - a) / max_panel_width));
    if (panels < 1) panels = 1;
    const double h = (b - a) / static_cast<double>(panels);
    if (budget) {
        budget->panels += panels;
        budget->panel_width = h;
    }
    double total = 0.0;
    for (std::int64_t i = 0; i < panels; ++i) {
        const double x0 = a + static_cast<double>(i) * h;
        const double x1 = x0 + h;
        const double xm = 0.5 * (x0 + x1);
        total += (f(x0) + 4.0 * f(xm) + f(x1)) * (h / 6.0);
    }
    return total;
}

}  // namespace favard
