#pragma once

#include "kneading/numeric.hpp"
#include "kneading/poly.hpp"

namespace kneading {

struct RootFindOptions {
    unsigned long max_bisections = 10000;  // exact sign evaluations in refinement
    int max_vca_depth = 3000;              // subdivision depth before giving up
    unsigned long max_nodes = 200000;      // subdivision nodes before giving up
};

struct RootEnclosure {
    bool has_root = false;
    Rat lo, hi;          // enclosure of the minimal root in (0,1); lo == hi if exact
    bool exact = false;  // the root is the rational lo itself
    unsigned long nodes = 0;
    unsigned long bisections = 0;
};

// Certified minimal root of an integer polynomial on the open interval (0,1).
//
// Requires p(0) > 0. Either certifies that p has no root in (0,1)
// (has_root = false; Descartes variation 0 on a full subdivision) or returns
// an enclosure [lo, hi] of width <= tol around the smallest root, with
// p > 0 certified on (0, lo]. Throws CertificationError when the variation
// count cannot be reduced below 2 at the depth cap (suspected multiple root)
// and CapExceeded when a work cap is hit.
RootEnclosure minimal_root01(poly::Poly p, const Rat& tol, const RootFindOptions& opt = {});

}  // namespace kneading
