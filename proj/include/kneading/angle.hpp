#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "kneading/numeric.hpp"

namespace kneading {

// An angle in [0,1] with eventually periodic binary expansion, stored as
// (preperiod digits, primitive period digits) plus the exact rational value.
// Normal form: the preperiod is minimal (its last digit differs from the
// period's last digit) and the period block is primitive. Dyadic rationals
// in (0,1) use the terminating expansion (period "0"), except 1/2 which is
// stored as .0(1) so that kneading angles in (0,1/2] start with digit 0.
class BinaryAngle {
  public:
    BinaryAngle() : value_(0), period_{0} {}

    static BinaryAngle from_fraction(const Int& num, const Int& den);
    static BinaryAngle from_fraction(const Rat& v);
    // .(block) -- purely periodic with the given repeating block
    static BinaryAngle from_periodic(const std::vector<uint8_t>& block);
    // .pre(block)
    static BinaryAngle from_digits(const std::vector<uint8_t>& pre,
                                   const std::vector<uint8_t>& block);
    // Accepts "p/q", ".b1b2...(per)" or a bare "0"/"1". Decimal notation is
    // rejected.
    static BinaryAngle parse(std::string_view s);

    const Rat& value() const { return value_; }
    const std::vector<uint8_t>& preperiod() const { return pre_; }
    const std::vector<uint8_t>& period() const { return period_; }
    size_t preperiod_length() const { return pre_.size(); }
    size_t period_length() const { return period_.size(); }
    size_t expansion_length() const { return pre_.size() + period_.size(); }

    // 1-based digit of the stored expansion.
    int digit(size_t k) const;

    bool is_dyadic() const;
    bool is_purely_periodic() const { return pre_.empty(); }

    // D(x) = 2x mod 1; the digit view is the left shift of this expansion,
    // re-canonicalized at the two wrap points (value 1 = 0 and value 1/2).
    BinaryAngle doubled() const;
    // x, D(x), ..., one entry per expansion digit: the preperiodic segment
    // followed by one full cycle.
    std::vector<BinaryAngle> orbit() const;

    // ".b1b2...(per)" -- bit-exact serialization of the stored expansion.
    std::string to_string() const;
    // "p/q"
    std::string fraction_string() const;

    friend bool operator==(const BinaryAngle& a, const BinaryAngle& b) {
        return a.value_ == b.value_;
    }
    friend bool operator!=(const BinaryAngle& a, const BinaryAngle& b) {
        return a.value_ != b.value_;
    }
    friend bool operator<(const BinaryAngle& a, const BinaryAngle& b) {
        return a.value_ < b.value_;
    }
    friend bool operator<=(const BinaryAngle& a, const BinaryAngle& b) {
        return a.value_ <= b.value_;
    }

  private:
    BinaryAngle(Rat v, std::vector<uint8_t> pre, std::vector<uint8_t> per)
        : value_(std::move(v)), pre_(std::move(pre)), period_(std::move(per)) {}

    BinaryAngle rotated_once() const;

    Rat value_;
    std::vector<uint8_t> pre_;
    std::vector<uint8_t> period_;
};

// 1-based index of the first differing digit of the stored expansions.
// Requires x != y.
size_t agreement_depth(const BinaryAngle& x, const BinaryAngle& y);

// The distance lemma c*2^-n <= |x - y| <= 2^(-n+1) with n the agreement
// depth and c = 2(1-2x) for x < 1/2, c = 1 for x = 1/2. Requires
// 0 < y < x <= 1/2 (both angles should lie in the real set).
struct DistanceBounds {
    size_t n = 0;
    Rat lower, upper;
    bool holds = false;
};
DistanceBounds distance_bounds_check(const BinaryAngle& x, const BinaryAngle& y);

// Exact value of a finite digit block read as an integer (MSB first).
Int block_value(const std::vector<uint8_t>& block);
std::vector<uint8_t> complement(std::vector<uint8_t> block);

}  // namespace kneading
