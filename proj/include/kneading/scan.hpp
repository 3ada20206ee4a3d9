#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kneading/angle.hpp"
#include "kneading/entropy.hpp"

namespace kneading {

enum class ScanMode { Entropy, Dimension, Both };

struct ScanConfig {
    Rat from{0};
    Rat to{1, 2};
    unsigned depth = 12;                       // dyadic grid k/2^depth
    std::vector<BinaryAngle> explicit_angles;  // overrides the grid when nonempty
    double tol = 1e-12;
    ScanMode mode = ScanMode::Entropy;
    unsigned workers = 0;  // 0 = hardware concurrency
};

struct ScanRow {
    BinaryAngle theta;
    std::optional<DoubleInterval> h;
    std::optional<DoubleInterval> dim;
    std::string error;  // per-row failure, scan continues
    bool ok() const { return error.empty(); }
};

// One row per grid angle, sorted by theta; deterministic regardless of the
// worker count. Rows that fail carry the error message instead of values.
std::vector<ScanRow> run_scan(const ScanConfig& cfg);

void validate(const ScanConfig& cfg);  // throws std::invalid_argument

}  // namespace kneading
