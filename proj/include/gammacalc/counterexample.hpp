#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "gammacalc/conditions.hpp"
#include "gammacalc/graph.hpp"
#include "gammacalc/operators.hpp"

namespace gammacalc {

/// The 3-vertex path x ~ y ~ z (x and z not adjacent).
inline Graph eg_graph() {
    return Graph::from_edges({{"x", "y"}, {"y", "z"}});
}

/// The one-parameter family f(x)=1, f(y)=y, f(z)=y^2 on the path graph.
inline VertexFunction eg_family_function(double y) {
    if (!(y > 0.0)) throw std::invalid_argument("family parameter y must be positive");
    VertexFunction f;
    f.set("x", 1.0);
    f.set("y", y);
    f.set("z", y * y);
    return f;
}

/// Gamma_2 at vertex x of the path graph, as the closed quadratic
/// (1/8)[z^2 + z(2x - 4y) + 8y^2 + 5x^2 - 12xy] in the three values.
inline double eg_gamma2_closed(double xv, double yv, double zv) {
    return (zv * zv + zv * (2.0 * xv - 4.0 * yv) + 8.0 * yv * yv + 5.0 * xv * xv -
            12.0 * xv * yv) / 8.0;
}

/// Gamma_2 - Gamma(f, Gamma(f)/f) at x for the family f=(1, y, y^2):
/// (1/8)(y^3 - 2y + 1/y).
inline double eg_lhs_closed(double y) {
    if (!(y > 0.0)) throw std::invalid_argument("family parameter y must be positive");
    return (y * y * y - 2.0 * y + 1.0 / y) / 8.0;
}

/// CDE'(0,n) slack along the family: eg_lhs_closed(y) - (1/n)(ln y)^2.
inline double eg_inequality_gap(double y, double n) {
    if (!(n > 0.0)) throw std::invalid_argument("dimension parameter n must be positive");
    double l = std::log(y);  // validates y > 0 via eg_lhs_closed below
    return eg_lhs_closed(y) - l * l / n;
}

/// h(y) = y^3 - 4y^2 + 6y - 4 + 1/y, the y > 1 branch surrogate.
inline double h_poly(double y) {
    if (!(y > 0.0)) throw std::invalid_argument("h is defined for y > 0");
    return y * y * y - 4.0 * y * y + 6.0 * y - 4.0 + 1.0 / y;
}

inline double h_poly_prime(double y) {
    if (!(y > 0.0)) throw std::invalid_argument("h is defined for y > 0");
    return 3.0 * y * y - 8.0 * y + 6.0 - 1.0 / (y * y);
}

inline double h_poly_second(double y) {
    if (!(y > 0.0)) throw std::invalid_argument("h is defined for y > 0");
    return 6.0 * y - 8.0 + 2.0 / (y * y * y);
}

/// Numerical certificate for the y > 1 branch: h(1) = 0, h'(1) = 0 and
/// h'' >= 0 on a grid over (1, y_max], hence h >= 0 there.
struct HAnalysis {
    double y_max = 10.0;
    int samples = 0;
    double h_at_one = 0.0;
    double h_prime_at_one = 0.0;
    double min_h = 0.0;
    double min_h_second = 0.0;
    bool h_at_one_zero = false;
    bool h_prime_at_one_zero = false;
    bool h_second_nonnegative = false;
    bool h_nonnegative = false;
    bool certified = false;  // conjunction of the four checks
};

inline HAnalysis h_analysis(double y_max = 10.0, int samples = 2000) {
    if (!(y_max > 1.0)) throw std::invalid_argument("h_analysis needs y_max > 1");
    if (samples < 2) throw std::invalid_argument("h_analysis needs at least 2 samples");
    HAnalysis a;
    a.y_max = y_max;
    a.samples = samples;
    a.h_at_one = h_poly(1.0);
    a.h_prime_at_one = h_poly_prime(1.0);
    a.min_h = h_poly(y_max);
    a.min_h_second = h_poly_second(y_max);
    for (int i = 0; i < samples; ++i) {
        double y = 1.0 + (y_max - 1.0) * (static_cast<double>(i + 1) / samples);
        a.min_h = std::min(a.min_h, h_poly(y));
        a.min_h_second = std::min(a.min_h_second, h_poly_second(y));
    }
    a.h_at_one_zero = std::abs(a.h_at_one) <= 1e-12;
    a.h_prime_at_one_zero = std::abs(a.h_prime_at_one) <= 1e-12;
    a.h_second_nonnegative = a.min_h_second >= -1e-12;
    a.h_nonnegative = a.min_h >= -1e-12;
    a.certified = a.h_at_one_zero && a.h_prime_at_one_zero && a.h_second_nonnegative &&
                  a.h_nonnegative;
    return a;
}

/// Q(y) = y^3 - 2y + 9/y - 4/y^2 - 4, evaluated directly and through its
/// factorization (y-1)^3 (1 + 3/y + 4/y^2).
struct QFactorCheck {
    double direct = 0.0;
    double factored = 0.0;
};

inline QFactorCheck q_poly_factor_check(double y) {
    if (!(y > 0.0)) throw std::invalid_argument("Q is defined for y > 0");
    QFactorCheck q;
    q.direct = y * y * y - 2.0 * y + 9.0 / y - 4.0 / (y * y) - 4.0;
    double w = y - 1.0;
    q.factored = w * w * w * (1.0 + 3.0 / y + 4.0 / (y * y));
    return q;
}

}  // namespace gammacalc
