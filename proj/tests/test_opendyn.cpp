#include <doctest.h>

#include <cmath>

#include "kneading/entropy.hpp"
#include "kneading/opendyn.hpp"
#include "kneading/realset.hpp"

using namespace kneading;

namespace {

BinaryAngle frac(long n, long d) { return BinaryAngle::from_fraction(Int(n), Int(d)); }

}  // namespace

TEST_SUITE_BEGIN("opendyn");

TEST_CASE("full shift at theta = 1/2") {
    auto a = build_automaton(frac(1, 2));
    CHECK(a.state_count() == 2);
    CHECK(a.lambda_lo <= Rat(2));
    CHECK(Rat(2) <= a.lambda_hi + Rat(1, Int(1) << 30));
    auto d = dimension(a);
    CHECK(d.lo <= 1.0);
    CHECK(d.hi >= 1.0 - 1e-12);
    CHECK(cylinder_count(frac(1, 2), 10) == Int(1024));
}

TEST_CASE("golden automaton at theta = 3/7") {
    auto a = build_automaton(frac(3, 7));
    const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    CHECK(to_double_down(a.lambda_lo) <= golden);
    CHECK(golden <= to_double_up(a.lambda_hi));
    auto d = dimension(frac(3, 7), 1e-10);
    const double target = std::log(golden) / std::log(2.0);
    CHECK(d.lo <= target);
    CHECK(target <= d.hi);
    CHECK(d.hi - d.lo <= 1e-10);

    // Fibonacci-like growth of cylinder counts
    Int n16 = cylinder_count(frac(3, 7), 16);
    Int n17 = cylinder_count(frac(3, 7), 17);
    double ratio = mpz_get_d(n17.get_mpz_t()) / mpz_get_d(n16.get_mpz_t());
    CHECK(std::abs(ratio - golden) < 0.05);
    double per_level = std::log2(mpz_get_d(n16.get_mpz_t())) / 16.0;
    CHECK(std::abs(per_level - target) < 0.1);
}

TEST_CASE("counting converges to the dimension at O(1/n)") {
    // |log2(N_n)/n - eta| <= C/n: the fitted C stays bounded
    for (auto theta : {frac(3, 7), frac(13, 31), frac(7, 15)}) {
        double eta = dimension(theta, 1e-10).mid();
        double c_fit = 0;
        for (unsigned n = 4; n <= 24; n += 2) {
            Int cnt = cylinder_count(theta, n);
            double err = std::abs(std::log2(mpz_get_d(cnt.get_mpz_t())) / n - eta);
            c_fit = std::max(c_fit, n * err);
        }
        CHECK(c_fit < 8.0);
        // and the error at n = 24 is genuinely below c_fit/20
        Int c24 = cylinder_count(theta, 24);
        CHECK(std::abs(std::log2(mpz_get_d(c24.get_mpz_t())) / 24 - eta) <= c_fit / 20.0);
    }
}

TEST_CASE("zero-dimensional survivor set at theta = 1/3") {
    auto a = build_automaton(frac(1, 3));
    CHECK(a.lambda_lo == Rat(1));
    CHECK(a.lambda_hi - a.lambda_lo <= Rat(1, Int(1) << 40));
    auto d = dimension(a);
    CHECK(d.lo == 0.0);
    CHECK(d.hi <= 1e-10);
}

TEST_CASE("automaton counting agrees with naive enumeration") {
    for (auto theta : {frac(1, 3), frac(2, 5), frac(3, 7)}) {
        for (unsigned n = 1; n <= 16; ++n) {
            CHECK(cylinder_count(theta, n, CountMode::Automaton) ==
                  cylinder_count(theta, n, CountMode::Naive));
        }
    }
}

TEST_CASE("preperiodic holes still satisfy the Markov property") {
    for (auto theta : {frac(25, 56), frac(33, 80), frac(5, 12), frac(1, 4)}) {
        auto a = build_automaton(theta);  // throws on a Markov violation
        auto d = dimension(a);
        auto e = entropy(theta, 1e-12);
        double h_over_log2 = e.entropy.mid() / std::log(2.0);
        CHECK(d.lo <= h_over_log2 + 1e-9);
        CHECK(h_over_log2 - 1e-9 <= d.hi);
    }
}

TEST_CASE("sandwich: hole test from k = 0 and k = 1 give the same lambda") {
    for (auto theta : {frac(1, 3), frac(2, 5), frac(3, 7), frac(13, 31), frac(25, 56)}) {
        AutomatonOptions a0, a1;
        a1.from_first_iterate = true;
        auto full = build_automaton(theta, a0);
        auto tilde = build_automaton(theta, a1);
        CHECK(tilde.state_count() > full.state_count());
        // enclosures of the same Perron root must overlap
        CHECK(full.lambda_lo <= tilde.lambda_hi);
        CHECK(tilde.lambda_lo <= full.lambda_hi);
    }
}

TEST_CASE("dimension weakly increasing in theta") {
    auto corpus = enumerate_members(7);
    double prev = -1;
    for (const auto& theta : corpus) {
        auto d = dimension(theta, 1e-11);
        CHECK(d.hi >= prev - 1e-10);
        prev = std::max(prev, d.lo);
    }
}

TEST_CASE("matrix dump carries exact endpoints") {
    auto a = build_automaton(frac(3, 7));
    auto dump = dump_automaton(a);
    CHECK(dump.find("hole (3/7, 4/7)") != std::string::npos);
    CHECK(dump.find("1/7") != std::string::npos);
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(build_automaton(frac(0, 1)), std::invalid_argument);
    CHECK_THROWS_AS(build_automaton(frac(3, 5)), std::invalid_argument);
    CHECK_THROWS_AS(cylinder_count(frac(1, 3), 0), std::invalid_argument);
    CHECK_THROWS_AS(cylinder_count(frac(1, 3), 30, CountMode::Naive), CapExceeded);
}

TEST_SUITE_END();
