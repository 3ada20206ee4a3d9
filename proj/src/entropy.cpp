#include "kneading/entropy.hpp"

#include <algorithm>
#include <cmath>

#include "kneading/realset.hpp"

namespace kneading {

namespace {

// Certified lower bound on |P'| over [lo, hi]: exact |P'(mid)| minus the
// global second-derivative bound 2/(1-hi)^3 times the half-width.
Rat derivative_lower_bound(const KneadingSeries& s, const Rat& lo, const Rat& hi) {
    Rat mid = (lo + hi) / 2;
    Rat dmid = abs(evaluate_derivative(s, mid));
    if (lo == hi) return dmid;
    Rat one_minus = 1 - hi;
    Rat lip = Rat(2) / (one_minus * one_minus * one_minus);
    return dmid - lip * (hi - lo) / 2;
}

DoubleInterval reciprocal_bounds(const Rat& lo, const Rat& hi) {
    return {to_double_down(Rat(1) / hi), to_double_up(Rat(1) / lo)};
}

}  // namespace

EntropyResult entropy(const BinaryAngle& theta, const EntropyOptions& opt) {
    if (opt.extension == Extension::GapConstant && sgn(theta.value()) > 0 &&
        theta.value() < Rat(1, 2) && !is_real_angle(theta).member) {
        // outside R the extension is constant on the gap component; evaluate
        // at its exactly-located root
        BinaryAngle root = gap_root(theta, opt.gap_root_period_cap);
        EntropyOptions inner = opt;
        inner.extension = Extension::FormalSeries;  // the root is a member
        EntropyResult out = entropy(root, inner);
        out.gap_root_used = root;
        return out;
    }
    KneadingSeries s = series_from_angle(theta);
    EntropyResult out;
    RootEnclosure enc = minimal_root01(s.numerator, opt.tol, opt.rootfind);
    if (!enc.has_root) {
        out.certificate = Certificate::NoRoot;
        out.entropy = {0.0, 0.0};
        out.growth_rate = {1.0, 1.0};
        out.derivative_certified = false;
        return out;
    }
    if (enc.lo < Rat(1, 2) - opt.tol || enc.hi >= 1)
        throw CertificationError("entropy: root enclosure escapes [1/2, 1)");

    out.certificate = Certificate::Root;
    out.root_exact = enc.exact;
    out.r_lo = enc.lo;
    out.r_hi = enc.hi;
    // P(t) >= (1-2t)/(1-t) > 0 below 1/2 for any +-1 coefficient series, so
    // the enclosure can be clipped there.
    if (!out.root_exact && out.r_lo < Rat(1, 2)) out.r_lo = Rat(1, 2);

    if (opt.certify_derivative) {
        // tighten the enclosure until |P'| is bounded away from 0, or give up
        // and flag (a multiple root would contradict the simplicity theorem)
        Rat lb = derivative_lower_bound(s, out.r_lo, out.r_hi);
        unsigned long extra = 0;
        while (sgn(lb) <= 0 && !out.root_exact && extra < opt.derivative_extra_bisections) {
            Rat mid = (out.r_lo + out.r_hi) / 2;
            int sign = sgn(evaluate(s, mid).lo);
            ++extra;
            if (sign == 0) {
                out.r_lo = out.r_hi = mid;
                out.root_exact = true;
                lb = derivative_lower_bound(s, mid, mid);
                break;
            }
            (sign > 0 ? out.r_lo : out.r_hi) = mid;
            lb = derivative_lower_bound(s, out.r_lo, out.r_hi);
        }
        if (sgn(lb) > 0) {
            out.derivative_lb = to_double_down(lb);
            out.derivative_certified = true;
        } else {
            out.derivative_lb = 0.0;
            out.derivative_certified = false;
        }
    }

    out.entropy = neg_log_bounds(out.r_lo, out.r_hi, opt.prec_bits);
    if (out.entropy.lo < 0) out.entropy.lo = 0;
    out.growth_rate = reciprocal_bounds(out.r_lo, out.r_hi);
    return out;
}

EntropyResult entropy(const BinaryAngle& theta, double tol) {
    EntropyOptions opt;
    opt.tol = Rat(tol);
    return entropy(theta, opt);
}

DoubleInterval entropy_difference(const EntropyResult& a, const EntropyResult& b,
                                  int prec_bits) {
    // h(a) - h(b) = log(r_b / r_a); exact rational ratios keep the
    // cancellation exact.
    bool a_root = a.certificate != Certificate::NoRoot;
    bool b_root = b.certificate != Certificate::NoRoot;
    if (!a_root && !b_root) return {0.0, 0.0};
    Rat a_lo = a_root ? a.r_lo : Rat(1), a_hi = a_root ? a.r_hi : Rat(1);
    Rat b_lo = b_root ? b.r_lo : Rat(1), b_hi = b_root ? b.r_hi : Rat(1);
    DoubleInterval lo_part = log_bounds(b_lo / a_hi, prec_bits);
    DoubleInterval hi_part = log_bounds(b_hi / a_lo, prec_bits);
    return {lo_part.lo, hi_part.hi};
}

DisplacementCheck displacement_inequality_check(const BinaryAngle& a, const BinaryAngle& b,
                                                const EntropyOptions& opt) {
    EntropyOptions eo = opt;
    eo.extension = Extension::FormalSeries;
    EntropyResult ea = entropy(a, eo);
    EntropyResult eb = entropy(b, eo);
    if (!ea.has_root() || !eb.has_root())
        throw std::invalid_argument("displacement_inequality_check: both angles need roots");
    DisplacementCheck out;
    Rat r_mid = (ea.r_lo + ea.r_hi) / 2;
    Rat rp_mid = (eb.r_lo + eb.r_hi) / 2;
    out.lhs = abs(rp_mid - r_mid);
    auto dd = difference_decomposition(a, b, r_mid);
    out.n = dd.n;
    // inf |P'_b| over the interval spanned by both roots, by adaptive
    // subdivision (the global |P''| <= 2/(1-t)^3 bound is too weak in one shot
    // unless the roots are close)
    KneadingSeries sb = series_from_angle(b);
    std::function<Rat(const Rat&, const Rat&, int)> inf_deriv = [&](const Rat& lo, const Rat& hi,
                                                                    int depth) -> Rat {
        Rat mid = (lo + hi) / 2;
        Rat one_minus = 1 - hi;
        Rat bound = abs(evaluate_derivative(sb, mid)) -
                    Rat(2) / (one_minus * one_minus * one_minus) * (hi - lo) / 2;
        if (sgn(bound) > 0 || depth == 0) return bound;
        return std::min(inf_deriv(lo, mid, depth - 1), inf_deriv(mid, hi, depth - 1));
    };
    Rat lo = std::min(ea.r_lo, eb.r_lo), hi = std::max(ea.r_hi, eb.r_hi);
    Rat deriv_lb = inf_deriv(lo, hi, 10);
    if (sgn(deriv_lb) <= 0) {
        out.holds = false;  // |P'_b| not boundable away from 0 on [r, r']
        return out;
    }
    Rat rn(1);
    for (size_t i = 0; i < out.n; ++i) rn *= ea.r_hi;
    out.rhs = rn * abs(dd.remainder_value) / deriv_lb;
    // slack for evaluating h at the rational enclosure midpoints
    out.holds = out.lhs <= out.rhs * Rat(1001, 1000) + (ea.r_hi - ea.r_lo) + (eb.r_hi - eb.r_lo);
    return out;
}

namespace {

poly::Poly truncated_series_poly(const DigitSource& digits, size_t depth) {
    // Q_d(t) = 1 + sum_{k<=d} eps_k t^k with eps_k from digit k+1
    poly::Poly q(depth + 1, Int(0));
    q[0] = 1;
    for (size_t k = 1; k <= depth; ++k) {
        int d = digits(k + 1);
        if (d != 0 && d != 1) throw std::invalid_argument("entropy_stream: digits must be 0/1");
        q[k] = d ? -1 : 1;
    }
    return q;
}

}  // namespace

EntropyResult entropy_stream(const DigitSource& digits, const StreamOptions& opt) {
    if (digits(1) != 0)
        throw std::invalid_argument("entropy_stream: angle must lie in [0,1/2] (first digit 0)");
    const double log2v = std::log(2.0);
    EntropyResult out;
    out.certificate = Certificate::Interval;
    double lo = 0.0, hi = log2v;

    size_t depth = std::min<size_t>(64, opt.max_depth);
    for (;;) {
        out.depth_used = depth;
        // envelope route: P(t) is within t^(d+1)/(1-t) of Q_d(t); multiply by
        // (1-t) to keep integer polynomials
        poly::Poly q = truncated_series_poly(digits, depth);
        poly::Poly one_minus_t{Int(1), Int(-1)};
        poly::Poly base = poly::mul(q, one_minus_t);
        poly::Poly tpow(depth + 2, Int(0));
        tpow[depth + 1] = 1;
        poly::Poly lower_env = poly::sub(base, tpow);  // <= P(t)(1-t)
        poly::Poly upper_env = poly::add(base, tpow);  // >= P(t)(1-t)

        RootEnclosure r_lo_bound = minimal_root01(lower_env, opt.entropy_opt.tol,
                                                  opt.entropy_opt.rootfind);
        RootEnclosure r_hi_bound = minimal_root01(upper_env, opt.entropy_opt.tol,
                                                  opt.entropy_opt.rootfind);
        double env_hi = r_lo_bound.has_root
                            ? neg_log_bounds(r_lo_bound.lo, r_lo_bound.lo).hi
                            : 0.0;  // lower envelope positive on (0,1): no root at all
        double env_lo = r_hi_bound.has_root
                            ? neg_log_bounds(r_hi_bound.hi, r_hi_bound.hi).lo
                            : 0.0;

        // monotonicity route: every compatible angle lies in [v, v + 2^-d]
        Rat v(0);
        for (size_t k = 1; k <= depth + 1; ++k)
            if (digits(k)) v += pow2(-static_cast<long>(k));
        Rat v_hi = v + pow2(-static_cast<long>(depth + 1));
        if (v_hi > Rat(1, 2)) v_hi = Rat(1, 2);
        EntropyOptions mono_opt = opt.entropy_opt;
        // gap roots near the prefix cylinder can have period up to ~depth
        mono_opt.gap_root_period_cap =
            std::max<unsigned>(mono_opt.gap_root_period_cap, 2 * depth + 16);
        EntropyResult e_lo = entropy(BinaryAngle::from_fraction(v), mono_opt);
        EntropyResult e_hi = entropy(BinaryAngle::from_fraction(v_hi), mono_opt);

        lo = std::max(env_lo, e_lo.entropy.lo);
        hi = std::min(env_hi, e_hi.entropy.hi);
        lo = std::max(0.0, lo);
        if (hi < lo) hi = lo;  // both enclosures are valid, so this is rounding noise

        if (hi - lo <= opt.tol || depth >= opt.max_depth) break;
        depth = std::min(depth * 2, opt.max_depth);
    }
    out.entropy = {lo, hi};
    out.growth_rate = {std::exp(lo), std::exp(hi)};
    out.widen = (hi - lo) > opt.tol;
    return out;
}

}  // namespace kneading
