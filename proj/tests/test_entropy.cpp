#include <doctest.h>

#include <cmath>
#include <random>

#include "kneading/entropy.hpp"
#include "kneading/realset.hpp"

using namespace kneading;

namespace {

BinaryAngle frac(long n, long d) { return BinaryAngle::from_fraction(Int(n), Int(d)); }

}  // namespace

TEST_SUITE_BEGIN("entropy");

TEST_CASE("anchor: h(1/2) = log 2, root exactly 1/2") {
    auto e = entropy(frac(1, 2), 1e-13);
    REQUIRE(e.has_root());
    CHECK(e.root_exact);
    CHECK(e.r_lo == Rat(1, 2));
    CHECK(e.entropy.lo <= std::log(2.0));
    CHECK(std::log(2.0) <= e.entropy.hi);
    CHECK(e.entropy.width() < 1e-12);
}

TEST_CASE("anchor: h(3/7) = log golden ratio") {
    // independent oracle: minimal root of 1 - t - t^2 by the quadratic formula
    const double r_star = (std::sqrt(5.0) - 1.0) / 2.0;
    const double h_star = std::log((1.0 + std::sqrt(5.0)) / 2.0);
    auto e = entropy(frac(3, 7), 1e-13);
    REQUIRE(e.has_root());
    CHECK(to_double_down(e.r_lo) <= r_star);
    CHECK(r_star <= to_double_up(e.r_hi));
    CHECK(e.entropy.lo <= h_star);
    CHECK(h_star <= e.entropy.hi);
    CHECK(e.entropy.width() < 1e-12);
    CHECK(e.derivative_certified);
}

TEST_CASE("no-root certificates") {
    for (auto theta : {frac(0, 1), frac(1, 3), frac(2, 5), frac(1, 4)}) {
        auto e = entropy(theta, 1e-13);
        CHECK(e.certificate == Certificate::NoRoot);
        CHECK(e.entropy.lo == 0.0);
        CHECK(e.entropy.hi == 0.0);
    }
}

TEST_CASE("period-doubling invariance of entropy") {
    // h(2/5) = h(1/3) = 0 and pd preserves entropy across the corpus
    auto corpus = enumerate_members(8);
    for (const auto& theta : corpus) {
        auto e1 = entropy(theta, 1e-13);
        auto e2 = entropy(period_doubling(theta), 1e-13);
        auto diff = entropy_difference(e1, e2);
        CHECK(std::abs(diff.lo) <= 2e-12);
        CHECK(std::abs(diff.hi) <= 2e-12);
    }
}

TEST_CASE("root range and positivity below the root") {
    auto corpus = enumerate_members(9);
    std::mt19937 rng(17);
    int roots = 0;
    for (const auto& theta : corpus) {
        auto e = entropy(theta, 1e-12);
        if (!e.has_root()) continue;
        ++roots;
        CHECK(e.r_lo >= Rat(1, 2));
        CHECK(e.r_hi < Rat(1));
        CHECK(e.entropy.hi <= std::log(2.0) + 1e-15);
        // P > 0 strictly below the certified root
        auto s = series_from_angle(theta);
        for (int i = 0; i < 4; ++i) {
            Rat t = e.r_lo * Rat(1 + static_cast<long>(rng() % 97), 100);
            if (!(Rat(0) < t && t < e.r_lo)) continue;
            CHECK(evaluate(s, t).lo > 0);
        }
    }
    CHECK(roots >= 10);
}

TEST_CASE("simplicity: derivative bounded away from zero on the corpus") {
    for (const auto& theta : enumerate_members(9)) {
        auto e = entropy(theta, 1e-12);
        if (!e.has_root()) continue;
        CHECK(e.derivative_certified);
        CHECK(e.derivative_lb > 1e-6);
    }
}

TEST_CASE("monotonicity on a member grid") {
    auto corpus = enumerate_members(8);  // sorted
    double prev_lo = -1;
    for (const auto& theta : corpus) {
        auto e = entropy(theta, 1e-13);
        CHECK(e.entropy.hi >= prev_lo);
        prev_lo = std::max(prev_lo, e.entropy.lo);
    }
}

TEST_CASE("small-copy constancy of the extension") {
    auto root = frac(3, 7);
    auto tip = frac(25, 56);
    auto e_root = entropy(root, 1e-13);
    for (int k = 1; k <= 8; ++k) {
        Rat v = root.value() + Rat(k, 9) * (tip.value() - root.value());
        auto e = entropy(BinaryAngle::from_fraction(v), 1e-13);
        auto diff = entropy_difference(e_root, e);
        CHECK(std::abs(diff.lo) <= 1e-10);
        CHECK(std::abs(diff.hi) <= 1e-10);
    }
}

TEST_CASE("positivity threshold at the Feigenbaum point") {
    // cascade members eta_n below theta_star have h = 0
    for (auto theta : {frac(0, 1), frac(1, 3), frac(2, 5), frac(7, 17)}) {
        auto e = entropy(theta, 1e-12);
        CHECK_FALSE(e.has_root());
    }
    // members above theta_star have h > 0
    for (auto theta : {frac(33, 80), frac(13, 31), frac(3, 7), frac(25, 56), frac(1, 2)}) {
        auto e = entropy(theta, 1e-12);
        REQUIRE(e.has_root());
        CHECK(e.entropy.lo > 0);
    }
}

TEST_CASE("satellite angles inherit the half-period entropy") {
    // h at a satellite equals h at its half-period angle (locally constant)
    auto sat = frac(4, 9);  // pd(3/7)
    auto e1 = entropy(sat, 1e-13);
    auto e2 = entropy(frac(3, 7), 1e-13);
    auto diff = entropy_difference(e1, e2);
    CHECK(std::abs(diff.lo) <= 2e-12);
    CHECK(std::abs(diff.hi) <= 2e-12);
}

TEST_CASE("displacement inequality |r'-r| <= r^n |h(r)| / inf|P'|") {
    // the mechanism behind the upper modulus bound, on positive-entropy pairs
    // the inequality is local (the modulus proposition takes an inf over a
    // neighborhood), so probe adjacent corpus pairs
    auto corpus = enumerate_members(9);  // sorted
    std::vector<BinaryAngle> positive;
    for (const auto& theta : corpus)
        if (entropy(theta, 1e-10).has_root()) positive.push_back(theta);
    REQUIRE(positive.size() >= 8);
    int checked = 0;
    for (size_t i = 0; i + 1 < positive.size() && checked < 16; i += 3) {
        EntropyOptions eo;
        eo.tol = pow2(-60);
        auto chk = displacement_inequality_check(positive[i + 1], positive[i], eo);
        CHECK(chk.holds);
        ++checked;
    }
    CHECK(checked >= 12);
}

TEST_CASE("certified entropy differences far below double precision") {
    // r enclosures are exact rationals, so h-differences ~1e-16 are meaningful
    Rat v = Rat(1, 2) - pow2(-52);
    EntropyOptions eo;
    eo.tol = pow2(-90);
    auto e_half = entropy(frac(1, 2), eo);
    auto e_near = entropy(BinaryAngle::from_fraction(v), eo);
    auto diff = entropy_difference(e_half, e_near);
    CHECK(diff.lo > 0);          // h(1/2) strictly larger
    CHECK(diff.hi < 1e-14);      // but only barely
}

TEST_SUITE_END();
