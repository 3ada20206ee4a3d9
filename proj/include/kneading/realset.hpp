#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "kneading/angle.hpp"

namespace kneading {

// Classification of an angle against the set R of real kneading angles:
// member iff no forward iterate of the doubling map enters (theta, 1-theta).
struct AngleClass {
    bool member = false;
    bool purely_periodic = false;
    bool primitive = false;               // defined only when purely periodic member
    std::optional<size_t> witness_k;      // violating iterate, or the k with
                                          // D^k(theta) = 1-theta for satellites
};

// Requires theta in [0, 1/2].
AngleClass is_real_angle(const BinaryAngle& theta);

// Period doubling .(s) -> .(s s~). Requires theta purely periodic in R
// (pd(0) = 1/3).
BinaryAngle period_doubling(const BinaryAngle& theta);

// Tip of the small copy rooted at theta: .(s) -> .s(s~); the copy is the
// open interval (theta, tip). tip(0) = pd(0) = 1/3 by convention.
BinaryAngle small_copy_tip(const BinaryAngle& theta);

// delta = 1/2 min{ D^k(theta) - (1-theta) : D^k(theta) > 1-theta } from the
// lower-bound proposition. Requires theta primitive in (0,1/2); for the top
// angle theta = 1/2 returns 1/8 (any positive value below 1/2 - 3/7 works).
Rat approximation_delta(const BinaryAngle& theta);

struct ApproximantOptions {
    std::optional<Rat> delta;  // override; must be in (0, default delta]
    unsigned period_cap = 24;
};

// Some purely periodic theta' in R with theta - delta < theta' < theta,
// found by enumerating periodic angles of increasing period. Throws
// CapExceeded when no admissible angle of period <= period_cap exists.
BinaryAngle approximant_below(const BinaryAngle& theta, const ApproximantOptions& opt = {});

// theta_m = .((s)^m t) where s is theta's period block and t is theta_p's;
// membership of the result is re-checked. m = 1 gives the point xi of the
// approximation lemma.
BinaryAngle approximant_sequence(const BinaryAngle& theta, const BinaryAngle& theta_p,
                                 unsigned m);

// The lower-bound construction of the paper: blocks of length P = p*q,
// theta_m = .((s^q)^m (t^p)), giving |theta - theta_m| <= 2^(-mP). Also
// membership re-checked.
BinaryAngle approximant_sequence_pq(const BinaryAngle& theta, const BinaryAngle& theta_p,
                                    unsigned m);

// All purely periodic members of R with minimal period <= max_period in
// (0, 1/2], increasing value. Includes 0 when include_zero.
std::vector<BinaryAngle> enumerate_members(unsigned max_period, bool include_zero = false);

// The root of the gap component of [0,1/2] \ R containing the non-member x:
// the unique purely periodic theta' in R with theta' < x < pd(theta').
// theta' is the periodization of x's first p digits for some p, so the
// search is exact: candidates .(b_1..b_p) are tested for membership and for
// x < pd(candidate). Throws CapExceeded if p exceeds period_cap.
BinaryAngle gap_root(const BinaryAngle& x, unsigned period_cap = 64);

}  // namespace kneading
