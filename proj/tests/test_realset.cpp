#include <doctest.h>

#include <random>

#include "kneading/realset.hpp"

using namespace kneading;

namespace {

BinaryAngle frac(long n, long d) { return BinaryAngle::from_fraction(Int(n), Int(d)); }

// brute-force membership oracle: iterate the doubling map on raw rationals
bool member_oracle(const Rat& theta) {
    Rat lo = theta, hi = 1 - theta;
    Rat x = theta;
    // preperiod + period of theta is at most den(theta) steps
    unsigned long cap = mpz_get_ui(theta.get_den().get_mpz_t()) + 2;
    for (unsigned long k = 0; k < cap; ++k) {
        if (lo < x && x < hi) return false;
        x *= 2;
        if (x >= 1) x -= 1;
    }
    return true;
}

}  // namespace

TEST_SUITE_BEGIN("realset");

TEST_CASE("membership examples") {
    auto zero = is_real_angle(frac(0, 1));
    CHECK(zero.member);
    CHECK(zero.purely_periodic);

    auto quarter = is_real_angle(frac(1, 4));
    CHECK_FALSE(quarter.member);
    REQUIRE(quarter.witness_k.has_value());
    CHECK(*quarter.witness_k == 1);  // D(1/4) = 1/2 in (1/4, 3/4)

    auto two_fifths = is_real_angle(frac(2, 5));
    CHECK(two_fifths.member);
    CHECK(two_fifths.purely_periodic);
    CHECK_FALSE(two_fifths.primitive);  // satellite
    REQUIRE(two_fifths.witness_k.has_value());
    CHECK(*two_fifths.witness_k == 2);  // D^2(2/5) = 3/5 = 1 - 2/5

    auto sevenths = is_real_angle(frac(3, 7));
    CHECK(sevenths.member);
    CHECK(sevenths.primitive);

    auto half = is_real_angle(frac(1, 2));
    CHECK(half.member);
    CHECK_FALSE(half.purely_periodic);

    CHECK_THROWS_AS(is_real_angle(frac(3, 5)), std::invalid_argument);
}

TEST_CASE("membership agrees with the brute-force oracle") {
    std::mt19937 rng(4242);
    for (int i = 0; i < 400; ++i) {
        long d = 2 + static_cast<long>(rng() % 600);
        long n = static_cast<long>(rng() % (d / 2 + 1));
        Rat v(n, d);
        v.canonicalize();
        if (v > Rat(1, 2)) continue;
        CHECK(is_real_angle(BinaryAngle::from_fraction(v)).member == member_oracle(v));
    }
}

TEST_CASE("period doubling") {
    CHECK(period_doubling(frac(0, 1)).value() == Rat(1, 3));
    CHECK(period_doubling(frac(1, 3)).value() == Rat(2, 5));
    CHECK(period_doubling(frac(3, 7)).value() == Rat(4, 9));
    CHECK_THROWS_AS(period_doubling(frac(1, 2)), std::invalid_argument);   // not purely periodic
    CHECK_THROWS_AS(period_doubling(frac(1, 5)), std::invalid_argument);   // not a member
}

TEST_CASE("small copy tip") {
    CHECK(small_copy_tip(frac(3, 7)).value() == Rat(25, 56));
    CHECK(small_copy_tip(frac(1, 3)).value() == Rat(5, 12));
    CHECK(small_copy_tip(frac(0, 1)).value() == Rat(1, 3));  // tip(0) = pd(0)
}

TEST_CASE("pd and tip ordering on the purely periodic corpus") {
    auto corpus = enumerate_members(8);
    size_t checked = 0;
    for (const auto& theta : corpus) {
        auto pd = period_doubling(theta);
        CHECK(is_real_angle(pd).member);
        auto tip = small_copy_tip(theta);
        CHECK(theta.value() < pd.value());
        CHECK(pd.value() < tip.value());
        CHECK(tip.value() <= Rat(1, 2));
        ++checked;
    }
    CHECK(checked >= 20);
}

TEST_CASE("gap structure: non-members fall inside (theta, pd(theta))") {
    // interior points of corpus gaps are non-members and locate back to their root
    auto corpus = enumerate_members(8, true);
    for (const auto& theta : corpus) {
        Rat pd = period_doubling(theta).value();
        for (int k = 1; k <= 3; ++k) {
            Rat x = theta.value() + Rat(k, 4) * (pd - theta.value());
            CHECK_FALSE(is_real_angle(BinaryAngle::from_fraction(x)).member);
        }
    }
    // random non-members locate in a gap under a bounded (period <= 14)
    // search; samples stay below 0.46 where gap roots have moderate period
    auto search = enumerate_members(14, true);
    std::mt19937 rng(11);
    int found = 0;
    for (int i = 0; i < 60; ++i) {
        long d = 3 + static_cast<long>(rng() % 200);
        long n = 1 + static_cast<long>(rng() % (d / 2));
        Rat x(n, d);
        x.canonicalize();
        if (x >= Rat(46, 100)) continue;
        if (is_real_angle(BinaryAngle::from_fraction(x)).member) continue;
        bool located = false;
        for (const auto& theta : search) {
            if (theta.value() < x && x < period_doubling(theta).value()) {
                located = true;
                break;
            }
        }
        CHECK(located);
        ++found;
    }
    CHECK(found > 10);
}

TEST_CASE("approximation delta") {
    CHECK(approximation_delta(frac(3, 7)) == Rat(1, 14));  // 1/2 (5/7 - 4/7)
    CHECK(approximation_delta(frac(1, 2)) == Rat(1, 8));
    CHECK_THROWS_AS(approximation_delta(frac(2, 5)), std::invalid_argument);  // satellite
}

TEST_CASE("approximant below") {
    CHECK(approximant_below(frac(3, 7)).value() == Rat(2, 5));
    CHECK(approximant_below(frac(1, 2)).value() == Rat(3, 7));

    ApproximantOptions small_delta;
    small_delta.delta = Rat(1, 20);
    CHECK(approximant_below(frac(3, 7), small_delta).value() == Rat(2, 5));

    ApproximantOptions capped;
    capped.period_cap = 2;
    CHECK_THROWS_AS(approximant_below(frac(3, 7), capped), CapExceeded);
}

TEST_CASE("approximant sequence") {
    auto xi = approximant_sequence(frac(3, 7), frac(2, 5), 1);
    CHECK(xi.value() == Rat(54, 127));
    auto t2 = approximant_sequence(frac(3, 7), frac(2, 5), 2);
    Rat expected(438, 1023);
    expected.canonicalize();
    CHECK(t2.value() == expected);
    // first m*p digits coincide with theta by construction
    for (unsigned m = 1; m <= 4; ++m) {
        auto tm = approximant_sequence(frac(3, 7), frac(2, 5), m);
        CHECK(agreement_depth(tm, frac(3, 7)) >= 3 * m);
        CHECK(is_real_angle(tm).member);
    }
}

TEST_CASE("pq-block approximants satisfy the 2^-mP distance bound") {
    auto theta = frac(3, 7);
    auto tp = approximant_below(theta);
    unsigned long P = theta.period_length() * tp.period_length();
    for (unsigned m = 1; m <= 4; ++m) {
        auto tm = approximant_sequence_pq(theta, tp, m);
        CHECK(is_real_angle(tm).member);
        CHECK(abs(theta.value() - tm.value()) <= pow2(-static_cast<long>(m * P)));
    }
}

TEST_CASE("gap roots are located exactly") {
    CHECK(gap_root(frac(1, 4)).value() == Rat(0));        // gap (0, 1/3)
    CHECK(gap_root(frac(7, 20)).value() == Rat(1, 3));    // gap (1/3, 2/5)
    CHECK(gap_root(frac(31, 72)).value() == Rat(3, 7));   // gap (3/7, 4/9) inside the copy
    CHECK(gap_root(frac(891, 2000)).value() == Rat(4, 9));
    CHECK_THROWS_AS(gap_root(frac(3, 7)), std::invalid_argument);  // member
    CHECK_THROWS_AS(gap_root(frac(0, 1)), std::invalid_argument);

    // every located root's gap really contains the query
    std::mt19937 rng(23);
    int located = 0;
    for (int i = 0; i < 50; ++i) {
        long d = 3 + static_cast<long>(rng() % 3000);
        long n = 1 + static_cast<long>(rng() % (d / 2));
        Rat x(n, d);
        x.canonicalize();
        if (x >= Rat(1, 2)) continue;
        auto angle = BinaryAngle::from_fraction(x);
        if (is_real_angle(angle).member) continue;
        auto root = gap_root(angle);
        CHECK(root.value() < x);
        CHECK(x < period_doubling(root).value());
        CHECK(is_real_angle(root).member);
        ++located;
    }
    CHECK(located > 20);
}

TEST_CASE("corpus enumeration is sorted and member-only") {
    auto corpus = enumerate_members(10);
    CHECK(corpus.size() >= 30);
    for (size_t i = 0; i < corpus.size(); ++i) {
        CHECK(corpus[i].is_purely_periodic());
        CHECK(is_real_angle(corpus[i]).member);
        if (i) CHECK(corpus[i - 1].value() < corpus[i].value());
    }
}

TEST_SUITE_END();
