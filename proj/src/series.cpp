#include "kneading/series.hpp"

#include "kneading/realset.hpp"

namespace kneading {

namespace {

int8_t sign_of_digit(int d) { return d ? -1 : 1; }

}  // namespace

int KneadingSeries::sign(size_t k) const {
    if (k == 0) throw std::invalid_argument("series sign index is 1-based");
    if (k <= pre_signs.size()) return pre_signs[k - 1];
    return per_signs[(k - 1 - pre_signs.size()) % per_signs.size()];
}

std::vector<int> KneadingSeries::expand(size_t count) const {
    std::vector<int> c(count + 1);
    c[0] = 1;
    for (size_t k = 1; k <= count; ++k) c[k] = sign(k);
    return c;
}

KneadingSeries series_from_angle(const BinaryAngle& theta) {
    if (theta.value() > Rat(1, 2))
        throw std::invalid_argument("series_from_angle: requires theta <= 1/2");
    KneadingSeries s;
    s.source = theta;
    // eps_k reads digit k+1: the shifted expansion keeps the same period and
    // loses one preperiod digit (the leading 0); purely periodic expansions
    // rotate their block by one.
    const auto& pre = theta.preperiod();
    const auto& per = theta.period();
    if (!pre.empty()) {
        for (size_t i = 1; i < pre.size(); ++i) s.pre_signs.push_back(sign_of_digit(pre[i]));
        for (uint8_t b : per) s.per_signs.push_back(sign_of_digit(b));
    } else {
        for (size_t i = 1; i < per.size(); ++i) s.per_signs.push_back(sign_of_digit(per[i]));
        s.per_signs.push_back(sign_of_digit(per[0]));
    }
    const size_t m = s.pre_signs.size();
    const size_t P = s.per_signs.size();
    s.den_exponent = P;
    // N(t) = (1 + sum_{k<=m} eps_k t^k)(1 - t^P) + sum_j eps_{m+j} t^{m+j}
    poly::Poly head(m + 1, Int(0));
    head[0] = 1;
    for (size_t k = 1; k <= m; ++k) head[k] = s.pre_signs[k - 1];
    poly::Poly den(P + 1, Int(0));
    den[0] = 1;
    den[P] = -1;
    poly::Poly n = poly::mul(head, den);
    n.resize(std::max(n.size(), m + P + 1), Int(0));
    for (size_t j = 1; j <= P; ++j) n[m + j] += s.per_signs[j - 1];
    poly::trim(n);
    s.numerator = std::move(n);
    return s;
}

RatInterval evaluate(const KneadingSeries& s, const Rat& t, size_t truncate_depth) {
    if (!(Rat(0) < t && t < Rat(1)))
        throw std::invalid_argument("evaluate: t must lie in (0,1)");
    if (truncate_depth == 0) {
        Rat tp(1);
        for (size_t i = 0; i < s.den_exponent; ++i) tp *= t;
        Rat v = poly::eval_rat(s.numerator, t) / (1 - tp);
        return {v, v};
    }
    Rat partial(1), power(1);
    for (size_t k = 1; k <= truncate_depth; ++k) {
        power *= t;
        partial += Rat(s.sign(k)) * power;
    }
    Rat tail = power * t / (1 - t);  // |sum_{k>depth} eps_k t^k| <= t^{d+1}/(1-t)
    return {partial - tail, partial + tail};
}

Rat evaluate_derivative(const KneadingSeries& s, const Rat& t) {
    if (!(Rat(0) < t && t < Rat(1)))
        throw std::invalid_argument("evaluate_derivative: t must lie in (0,1)");
    // P = N/(1-t^P): P' = [N'(1-t^P) + P t^(P-1) N] / (1-t^P)^2
    Rat tp1(1);  // t^(P-1)
    for (size_t i = 0; i + 1 < s.den_exponent; ++i) tp1 *= t;
    Rat tp = tp1 * t;
    Rat n = poly::eval_rat(s.numerator, t);
    Rat nd = poly::eval_rat(poly::derivative(s.numerator), t);
    Rat den = 1 - tp;
    return (nd * den + Rat(static_cast<long>(s.den_exponent)) * tp1 * n) / (den * den);
}

bool pd_identity_check(const BinaryAngle& theta) {
    AngleClass cls = is_real_angle(theta);
    if (!cls.member || !cls.purely_periodic)
        throw std::invalid_argument("pd_identity_check: theta must be purely periodic in R");
    const size_t p = theta.period_length();
    BinaryAngle pd = period_doubling(theta);
    KneadingSeries a = series_from_angle(theta);
    KneadingSeries b = series_from_angle(pd);
    // N_pd (1+t^p)(1 - t^{Pa}) == N_a (1-t^p)(1 - t^{Pb})
    auto cyc = [](size_t e, int sign_at_e) {
        poly::Poly q(e + 1, Int(0));
        q[0] = 1;
        q[e] = sign_at_e;
        return q;
    };
    poly::Poly lhs = poly::mul(poly::mul(b.numerator, cyc(p, +1)), cyc(a.den_exponent, -1));
    poly::Poly rhs = poly::mul(poly::mul(a.numerator, cyc(p, -1)), cyc(b.den_exponent, -1));
    return lhs == rhs;
}

DifferenceDecomposition difference_decomposition(const BinaryAngle& a, const BinaryAngle& b,
                                                 const Rat& t) {
    if (a == b) throw std::invalid_argument("difference_decomposition: angles are equal");
    if (a.value() > Rat(1, 2) || b.value() > Rat(1, 2))
        throw std::invalid_argument("difference_decomposition: angles must lie in [0,1/2]");
    if (!(Rat(0) < t && t < Rat(1)))
        throw std::invalid_argument("difference_decomposition: t must lie in (0,1)");
    DifferenceDecomposition out;
    out.n = agreement_depth(a, b) - 1;  // digits shift by one against coefficients
    KneadingSeries sa = series_from_angle(a);
    KneadingSeries sb = series_from_angle(b);
    Rat diff = evaluate(sa, t).lo - evaluate(sb, t).lo;
    Rat tn(1);
    for (size_t i = 0; i < out.n; ++i) tn *= t;
    out.remainder_value = diff / tn;
    return out;
}

}  // namespace kneading
