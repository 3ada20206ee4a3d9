#pragma once

#include <functional>
#include <optional>

#include "kneading/rootfind.hpp"
#include "kneading/series.hpp"

namespace kneading {

enum class Certificate {
    Root,      // certified enclosure of the minimal root of the kneading series
    NoRoot,    // certified sign-constancy of N on (0,1); entropy is exactly 0
    Interval,  // stream mode: certified interval from a digit prefix
};

struct EntropyResult {
    Certificate certificate = Certificate::NoRoot;
    // minimal root enclosure (Certificate::Root); exact when root_exact
    Rat r_lo{1}, r_hi{1};
    bool root_exact = false;
    // set when theta was outside R and the value was taken at its gap root
    std::optional<BinaryAngle> gap_root_used;
    // h = -log r, outward rounded; [0,0] for NoRoot
    DoubleInterval entropy;
    // s = e^h = 1/r, outward rounded
    DoubleInterval growth_rate;
    // certified lower bound on |P'(r)| over the enclosure (0 when the bound
    // could not be established -- flagged, contradicts root simplicity)
    double derivative_lb = 0.0;
    bool derivative_certified = false;
    // stream mode
    bool widen = false;  // interval wider than the requested tol
    size_t depth_used = 0;

    bool has_root() const { return certificate == Certificate::Root; }
    double entropy_mid() const { return entropy.mid(); }
};

// How entropy is extended to angles outside the real set R. GapConstant is
// the paper's extension (constant on each gap component, evaluated at the
// exactly-located gap root); FormalSeries takes the minimal root of the
// angle's own formal kneading series, which is NOT constant on gaps and is
// kept for diagnostics only.
enum class Extension { GapConstant, FormalSeries };

struct EntropyOptions {
    Rat tol = Rat(1, Int(1) << 40);  // width bound for the root enclosure (~9e-13)
    RootFindOptions rootfind;
    bool certify_derivative = true;
    unsigned long derivative_extra_bisections = 400;
    int prec_bits = 0;  // 0 = library default
    Extension extension = Extension::GapConstant;
    unsigned gap_root_period_cap = 64;
};

// Certified topological entropy h(theta) = -log r of the minimal root r of
// the kneading series, extended to all of [0, 1/2] by constancy on the gap
// components of R.
EntropyResult entropy(const BinaryAngle& theta, const EntropyOptions& opt = {});
EntropyResult entropy(const BinaryAngle& theta, double tol);

// Certified difference h(a) - h(b) from the exact root enclosures (the
// cancellation happens in rational arithmetic, so differences far below
// double precision are meaningful).
DoubleInterval entropy_difference(const EntropyResult& a, const EntropyResult& b,
                                  int prec_bits = 0);

// Companion diagnostic for difference_decomposition: checks the root
// displacement inequality |r' - r| <= r^n |h(r)| / inf|P'_b| that drives the
// upper modulus bound. Requires both angles to carry roots.
struct DisplacementCheck {
    size_t n = 0;
    Rat lhs;   // |r' - r| (enclosure midpoints)
    Rat rhs;   // r_hi^n * |h(r)| / derivative lower bound
    bool holds = false;
};
DisplacementCheck displacement_inequality_check(const BinaryAngle& a, const BinaryAngle& b,
                                                const EntropyOptions& opt = {});

using DigitSource = std::function<int(size_t)>;  // 1-based digits of some theta in [0,1/2]

struct StreamOptions {
    double tol = 1e-10;          // target entropy-interval width
    size_t max_depth = 1 << 16;  // digit budget (doubling schedule from 64)
    EntropyOptions entropy_opt;
};

// Entropy interval valid for every angle sharing the given digit prefix:
// truncation envelopes Q_d(t)(1-t) -+ t^(d+1) intersected with the
// monotonicity bracket at the two dyadic endpoints of the prefix cylinder.
// Sets widen instead of failing when the interval stays wider than tol.
EntropyResult entropy_stream(const DigitSource& digits, const StreamOptions& opt = {});

}  // namespace kneading
