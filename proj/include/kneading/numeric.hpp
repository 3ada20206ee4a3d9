#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace kneading {

using Int = mpz_class;
using Rat = mpq_class;

// A certified computation could not reach its tolerance (suspected multiple
// root, Markov violation, non-convergence). CLI exit code 3.
class CertificationError : public std::runtime_error {
  public:
    explicit CertificationError(const std::string& msg) : std::runtime_error(msg) {}
};

// A configured cap (period cap, depth cap, iteration cap) was exhausted.
// CLI exit code 4.
class CapExceeded : public std::runtime_error {
  public:
    explicit CapExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

struct DoubleInterval {
    double lo = 0.0;
    double hi = 0.0;
    double width() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }
    bool contains(double x) const { return lo <= x && x <= hi; }
};

// Default mantissa bits for the MPFR conversions that turn exact rational
// enclosures into double intervals. Overridable via KNEADING_PREC_BITS.
int default_precision_bits();
void set_default_precision_bits(int bits);

// Outward-rounded enclosures computed with MPFR directed rounding.
// All inputs must be exact rationals; results are certified double bounds.

// log(x) for x > 0.
DoubleInterval log_bounds(const Rat& x, int prec_bits = 0);
// -log of an interval [lo, hi] in (0, 1]: certified enclosure of -log r for
// any r in the interval.
DoubleInterval neg_log_bounds(const Rat& lo, const Rat& hi, int prec_bits = 0);
// log(num) / log(den) for num > 0, den > 1 (used for log_2 lambda).
DoubleInterval log_ratio_bounds(const Rat& num_lo, const Rat& num_hi, const Rat& base,
                                int prec_bits = 0);

double to_double_down(const Rat& x);
double to_double_up(const Rat& x);

Rat pow2(long e);  // 2^e as exact rational, e may be negative

}  // namespace kneading
