#include <doctest.h>

#include <random>

#include "kneading/realset.hpp"
#include "kneading/series.hpp"

using namespace kneading;

namespace {

BinaryAngle frac(long n, long d) { return BinaryAngle::from_fraction(Int(n), Int(d)); }

poly::Poly make_poly(std::initializer_list<long> cs) {
    poly::Poly p;
    for (long c : cs) p.emplace_back(c);
    poly::trim(p);
    return p;
}

// independent expansion oracle: coefficients of N(t)/(1-t^P) as a power
// series, computed by polynomial long division
std::vector<long> divide_series(const poly::Poly& n, size_t P, size_t terms) {
    std::vector<long> out(terms + 1, 0);
    std::vector<long> rem(terms + P + 2, 0);
    for (size_t i = 0; i < n.size() && i < rem.size(); ++i) rem[i] = n[i].get_si();
    for (size_t k = 0; k <= terms; ++k) {
        out[k] = rem[k];
        if (k + P < rem.size()) rem[k + P] += rem[k];  // 1/(1-t^P) recursion
    }
    return out;
}

}  // namespace

TEST_SUITE_BEGIN("series");

TEST_CASE("series of the anchor angles") {
    auto half = series_from_angle(frac(1, 2));
    CHECK(half.numerator == make_poly({1, -2}));
    CHECK(half.den_exponent == 1);
    for (size_t k = 1; k <= 6; ++k) CHECK(half.sign(k) == -1);

    auto third = series_from_angle(frac(1, 3));
    CHECK(third.sign(1) == -1);
    CHECK(third.sign(2) == +1);
    CHECK(third.per_signs == std::vector<int8_t>{-1, 1});
    // N/(1-t^2) = (1-t)/(1-t^2) = 1/(1+t)
    CHECK(third.numerator == make_poly({1, -1}));
    CHECK(third.den_exponent == 2);

    auto sevenths = series_from_angle(frac(3, 7));
    CHECK(sevenths.per_signs == std::vector<int8_t>{-1, -1, 1});
    CHECK(sevenths.numerator == make_poly({1, -1, -1}));
    CHECK(sevenths.den_exponent == 3);

    auto zero = series_from_angle(frac(0, 1));
    CHECK(zero.numerator == make_poly({1}));
    for (size_t k = 1; k <= 6; ++k) CHECK(zero.sign(k) == +1);

    CHECK_THROWS_AS(series_from_angle(frac(3, 5)), std::invalid_argument);
}

TEST_CASE("exactness: rational form reproduces the sign sequence") {
    std::mt19937 rng(555);
    for (int i = 0; i < 150; ++i) {
        long d = 2 + static_cast<long>(rng() % 500);
        long n = static_cast<long>(rng() % (d / 2 + 1));
        Rat v(n, d);
        v.canonicalize();
        if (v > Rat(1, 2)) continue;
        auto s = series_from_angle(BinaryAngle::from_fraction(v));
        size_t terms = 2 * (s.pre_signs.size() + s.per_signs.size()) + 2;
        auto oracle = divide_series(s.numerator, s.den_exponent, terms);
        auto expanded = s.expand(terms);
        for (size_t k = 0; k <= terms; ++k) CHECK(oracle[k] == expanded[k]);
    }
}

TEST_CASE("evaluate: exact rational point values") {
    auto s = series_from_angle(frac(3, 7));
    auto v = evaluate(s, Rat(1, 2));
    CHECK(v.lo == Rat(2, 7));
    CHECK(v.hi == Rat(2, 7));

    auto zero = series_from_angle(frac(0, 1));
    auto w = evaluate(zero, Rat(1, 3));
    CHECK(w.lo == Rat(3, 2));  // 1/(1-t) at t = 1/3

    CHECK_THROWS_AS(evaluate(s, Rat(3, 2)), std::invalid_argument);
}

TEST_CASE("evaluate: truncated interval contains the exact value") {
    auto s = series_from_angle(frac(1, 2));
    Rat t(49, 100);
    auto exact = evaluate(s, t).lo;
    auto approx = evaluate(s, t, 100);
    CHECK(approx.lo <= exact);
    CHECK(exact <= approx.hi);
    // width is twice the tail bound t^(d+1)/(1-t)
    Rat tail(1);
    for (int k = 0; k < 101; ++k) tail *= t;
    tail /= (1 - t);
    CHECK(approx.hi - approx.lo == 2 * tail);
}

TEST_CASE("period-doubling identity") {
    CHECK(pd_identity_check(frac(0, 1)));
    CHECK(pd_identity_check(frac(1, 3)));
    CHECK(pd_identity_check(frac(3, 7)));
    for (const auto& theta : enumerate_members(7)) CHECK(pd_identity_check(theta));
    CHECK_THROWS_AS(pd_identity_check(frac(1, 2)), std::invalid_argument);
}

TEST_CASE("difference decomposition") {
    auto d = difference_decomposition(frac(3, 7), frac(2, 5), Rat(1, 2));
    CHECK(d.n == 4);

    // remainder bounded by 2/(1-t); leading coefficient +-2 checked through
    // the value at small t: h(t) -> +-2 as t -> 0
    std::mt19937 rng(808);
    for (int i = 0; i < 60; ++i) {
        long da = 3 + static_cast<long>(rng() % 200);
        long na = 1 + static_cast<long>(rng() % (da / 2));
        long db = 3 + static_cast<long>(rng() % 200);
        long nb = 1 + static_cast<long>(rng() % (db / 2));
        Rat va(na, da), vb(nb, db);
        va.canonicalize();
        vb.canonicalize();
        if (va == vb || va > Rat(1, 2) || vb > Rat(1, 2)) continue;
        Rat t(1 + static_cast<long>(rng() % 8), 10);
        auto dd = difference_decomposition(BinaryAngle::from_fraction(va),
                                           BinaryAngle::from_fraction(vb), t);
        CHECK(abs(dd.remainder_value) <= Rat(2) / (1 - t));
        // at t = 1/1024 the remainder is within 1/250 of the leading +-2
        auto lead = difference_decomposition(BinaryAngle::from_fraction(va),
                                             BinaryAngle::from_fraction(vb), Rat(1, 1024));
        CHECK(abs(abs(lead.remainder_value) - 2) < Rat(1, 250));
    }
}

TEST_SUITE_END();
