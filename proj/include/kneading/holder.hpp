#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "kneading/entropy.hpp"
#include "kneading/realset.hpp"

namespace kneading {

enum class Side { Left, Right, Both };

// One sampled pair of the log-log regression.
struct HolderSample {
    int scale_j = 0;          // |delta theta| ~ 2^-j
    double log2_dtheta = 0;   // log2 |theta - theta'|
    double log2_dh = 0;       // log2 |h(theta) - h(theta')| (certified nonzero)
    bool used = false;        // excluded pairs carry used = false
    Rat dtheta;               // exact offset
    DoubleInterval dh;        // certified entropy difference
};

struct HolderEstimate {
    double exponent = 0;      // least-squares slope of log2|dh| vs log2|dtheta|
    int j_min = 0, j_max = 0;
    unsigned samples_per_scale = 0;
    double residual = 0;      // max absolute deviation of the fit
    Side side = Side::Both;
    size_t used_pairs = 0;
    bool plateau = false;     // every pair discarded: entropy locally constant
    std::vector<HolderSample> samples;
};

struct HolderOptions {
    int j_min = 8;
    int j_max = 48;
    unsigned samples_per_scale = 8;
    Side side = Side::Both;
    int refine_rounds = 3;  // tolerance tightenings before a pair is discarded
};

// Local Holder exponent of the entropy at theta by certified finite
// differences at dyadic scales 2^-j and OLS in log-log coordinates.
// Reports plateau = true (no exponent) when every pair is discarded.
HolderEstimate local_exponent(const BinaryAngle& theta, const HolderOptions& opt = {});

struct UpperBoundProbe {
    double c_hat = 0;    // max |dh| / |dtheta|^(h/log2)
    bool holds = false;  // finite and stable under refinement toward theta
    std::vector<double> ratios;
};
UpperBoundProbe upper_bound_probe(const BinaryAngle& theta,
                                  const std::vector<BinaryAngle>& pairs);

struct LowerBoundProbe {
    double c_hat = 0;  // min_m (r_m - r) / |theta - theta_m|^(h/log2)
    bool holds = false;
    bool weak = false;  // m_max == 1: single pair, stability undetermined
    bool plateau = false;
    std::vector<double> per_m;
    std::vector<BinaryAngle> theta_m;
};
// Builds the paper's approximants theta_m (blocks of length P = p*q) from
// approximant_below and checks r_m - r >= c |theta - theta_m|^(h/log2).
LowerBoundProbe lower_bound_probe(const BinaryAngle& theta, unsigned m_max);

// Thue-Morse blocks S_0 = "0", S_{n+1} = S_n ~S_n; |S_n| = 2^n.
std::vector<uint8_t> thue_morse(unsigned n, unsigned cap = 20);

struct FeigenbaumRow {
    unsigned n = 0;
    BinaryAngle eta_n;    // .(S_n), root of the level-n copy
    BinaryAngle theta_n;  // .S_n(~S_n), tip of the level-n copy
    DoubleInterval h;     // certified entropy of theta_n
    Rat gap_lo, gap_hi;   // certified |theta_n - theta_star|
    Rat eta_gap_lo, eta_gap_hi;  // certified |theta_star - eta_n| (root distance)
    double modulus_product = 0;  // h(theta_n) * (-log|theta_n - theta_star|)
};
// Rows n = 0..n_max; h(theta_n) certified to tol. theta_star is bracketed by
// deep Thue-Morse prefixes.
std::vector<FeigenbaumRow> feigenbaum_ladder(unsigned n_max, double tol = 1e-11);

// Dyadic bracket of theta_star from `digits` Thue-Morse digits.
void theta_star_bracket(size_t digits, Rat& lo, Rat& hi);

}  // namespace kneading
