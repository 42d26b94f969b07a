// Why the cofactor floor is special to three maps: with five summands one can
// pick unit vectors 1, -i, i, e^{2 pi i/3}, e^{4 pi i/3} summing to zero whose
// fifth powers are the SAME summands, so the zero recurs across scales and no
// factor-separation argument can hold. This demo evaluates that resonance
// numerically: the five-term symbol vanishes simultaneously at x and 5x and
// 25x (powers of the configuration), while for the three-term symbol the
// stability bound Re(1 + w1^{3^k} + w2^{3^k}) >= 2 kicks in immediately.

#include <complex>
#include <cstdio>
#include <vector>

#include "favard/favard.hpp"

int main() {
    using favard::Complex;
    const Complex i(0.0, 1.0);
    std::vector<Complex> w = {Complex(1.0, 0.0), -i, i, std::polar(1.0, 2.0 * favard::kPi / 3.0),
                              std::polar(1.0, 4.0 * favard::kPi / 3.0)};

    std::printf("five-term configuration: 1 + (-i) + i + e^{2pi i/3} + e^{4pi i/3}\n");
    for (int power = 1; power <= 125; power *= 5) {
        Complex sum(0.0, 0.0);
        for (Complex v : w) {
            Complex acc(1.0, 0.0);
            for (int p = 0; p < power; ++p) acc *= v;
            sum += acc;
        }
        std::printf("  |sum of %3d-th powers| = %.3e   (stays a zero)\n", power, std::abs(sum));
    }

    std::printf("\nthree-term configuration: cube roots of unity\n");
    for (int k = 1; k <= 5; ++k) {
        favard::RootStability s = favard::root_stability(0.0, 0.0, k, 4, 0.2);
        std::printf("  Re(1 + w1^{3^%d} + w2^{3^%d}) = %.6f   (>= 2: no resonance)\n", k, k,
                    s.real_part);
    }
    return 0;
}
