#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kneading/angle.hpp"

namespace kneading {

// Markov model of the doubling map with the open hole (theta, 1-theta):
// partition of the circle into closed intervals with endpoints drawn from
// the orbits of theta and 1-theta, the 0/1 transition matrix of surviving
// pieces, and a certified enclosure of its Perron root.
struct SurvivorAutomaton {
    Rat hole_lo, hole_hi;  // hole_lo == hole_hi means the empty hole (theta = 1/2)
    struct Piece {
        Rat lo, hi;
        bool in_hole = false;  // interior lies inside the hole
        int digit = 0;         // 0 when the piece sits in [0,1/2], 1 otherwise
    };
    std::vector<Piece> pieces;            // full circle partition, sorted
    std::vector<uint32_t> states;         // indices of pieces that are automaton states
    std::vector<std::vector<uint32_t>> edges;  // over state indices (positions in `states`)
    bool from_first_iterate = false;      // K-tilde variant: hole test starts at k = 1

    Rat lambda_lo, lambda_hi;  // certified Perron root enclosure

    size_t state_count() const { return states.size(); }
};

struct AutomatonOptions {
    bool from_first_iterate = false;
    Rat lambda_tol = Rat(1, Int(1) << 40);
    unsigned sturm_state_limit = 64;   // above this, interval power iteration
    unsigned long power_iteration_cap = 4096;
};

// theta rational in (0, 1/2]; verifies the Markov property exactly and
// certifies the spectral radius.
SurvivorAutomaton build_automaton(const BinaryAngle& theta, const AutomatonOptions& opt = {});

// Certified enclosure of eta(theta) = log lambda / log 2.
DoubleInterval dimension(const BinaryAngle& theta, double tol = 1e-10);
DoubleInterval dimension(const SurvivorAutomaton& a);

enum class CountMode { Automaton, Naive };

// Number of depth-n binary cylinders containing a point x with
// D^k(x) outside the hole for all 0 <= k < n. Automaton mode runs a
// determinized path count (cap 64 states, n <= 40 by default); naive mode
// is an independent interval-propagation enumeration for cross-checking.
Int cylinder_count(const BinaryAngle& theta, unsigned n, CountMode mode = CountMode::Automaton);

// Plain-text adjacency list with exact rational interval endpoints.
std::string dump_automaton(const SurvivorAutomaton& a);

}  // namespace kneading
