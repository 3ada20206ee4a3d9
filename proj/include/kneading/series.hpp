#pragma once

#include <cstdint>
#include <vector>

#include "kneading/angle.hpp"
#include "kneading/poly.hpp"

namespace kneading {

// The kneading series P(t) = 1 + sum_k eps_k t^k of an angle in [0,1/2],
// with eps_k = +1 when digit k+1 of the angle is 0 and -1 when it is 1.
// Exact rational form P(t) = N(t) / (1 - t^P): the sign sequence is
// eventually periodic with preperiod `pre_signs` and period `per_signs`
// (length P), and N absorbs the preperiodic part.
struct KneadingSeries {
    std::vector<int8_t> pre_signs;
    std::vector<int8_t> per_signs;
    poly::Poly numerator;    // N(t), integer coefficients in {-2,...,2}
    size_t den_exponent;     // P
    BinaryAngle source;

    int sign(size_t k) const;  // eps_k, 1-based
    // coefficients of 1 + sum eps_k t^k up to t^count
    std::vector<int> expand(size_t count) const;
};

// Requires theta in [0, 1/2] (canonical form guaranteed by BinaryAngle).
KneadingSeries series_from_angle(const BinaryAngle& theta);

// P(t) at rational t in (0,1). Exact evaluation of N(t)/(1 - t^P) by
// default; with truncate_depth > 0, a partial sum plus the rigorous tail
// bound t^(depth+1)/(1-t) instead (an interval).
struct RatInterval {
    Rat lo, hi;
};
RatInterval evaluate(const KneadingSeries& s, const Rat& t, size_t truncate_depth = 0);

// Exact P'(t) of the series (derivative of the rational form).
Rat evaluate_derivative(const KneadingSeries& s, const Rat& t);

// Verifies the period-doubling identity P_pd(theta)(t) = P_theta(t)
// (1-t^p)/(1+t^p) as an exact integer polynomial identity. Requires theta
// purely periodic in the real set.
bool pd_identity_check(const BinaryAngle& theta);

// P_a(t) - P_b(t) = t^n h(t): first differing coefficient index n and the
// exact value of h(t) = (P_a(t) - P_b(t))/t^n, whose leading coefficient is
// +-2 and which is bounded by 2/(1-t).
struct DifferenceDecomposition {
    size_t n;
    Rat remainder_value;
};
DifferenceDecomposition difference_decomposition(const BinaryAngle& a, const BinaryAngle& b,
                                                 const Rat& t);

}  // namespace kneading
