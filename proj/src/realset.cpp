#include "kneading/realset.hpp"

#include <algorithm>

namespace kneading {

namespace {

std::vector<uint8_t> repeat_block(const std::vector<uint8_t>& block, unsigned times) {
    std::vector<uint8_t> out;
    out.reserve(block.size() * times);
    for (unsigned i = 0; i < times; ++i) out.insert(out.end(), block.begin(), block.end());
    return out;
}

void require_purely_periodic_member(const BinaryAngle& theta, const char* who) {
    AngleClass cls = is_real_angle(theta);
    if (!cls.member || !cls.purely_periodic)
        throw std::invalid_argument(std::string(who) +
                                    ": requires a purely periodic member of R");
}

}  // namespace

AngleClass is_real_angle(const BinaryAngle& theta) {
    if (theta.value() > Rat(1, 2))
        throw std::invalid_argument("is_real_angle: requires theta <= 1/2");
    AngleClass out;
    out.purely_periodic = theta.is_purely_periodic();
    const Rat lo = theta.value();
    const Rat hi = 1 - theta.value();
    out.member = true;
    auto orb = theta.orbit();
    for (size_t k = 0; k < orb.size(); ++k) {
        const Rat& x = orb[k].value();
        if (lo < x && x < hi) {
            out.member = false;
            out.witness_k = k;
            return out;
        }
    }
    if (out.purely_periodic) {
        out.primitive = true;
        for (size_t k = 0; k < orb.size(); ++k) {
            if (orb[k].value() == hi) {
                out.primitive = false;
                out.witness_k = k;  // satellite witness: D^k(theta) = 1 - theta
                break;
            }
        }
    }
    return out;
}

BinaryAngle period_doubling(const BinaryAngle& theta) {
    require_purely_periodic_member(theta, "period_doubling");
    std::vector<uint8_t> block = theta.period();
    std::vector<uint8_t> doubled = block;
    std::vector<uint8_t> comp = complement(block);
    doubled.insert(doubled.end(), comp.begin(), comp.end());
    return BinaryAngle::from_periodic(doubled);
}

BinaryAngle small_copy_tip(const BinaryAngle& theta) {
    require_purely_periodic_member(theta, "small_copy_tip");
    if (sgn(theta.value()) == 0) return period_doubling(theta);  // tip(0) = pd(0) = 1/3
    return BinaryAngle::from_digits(theta.period(), complement(theta.period()));
}

Rat approximation_delta(const BinaryAngle& theta) {
    if (theta.value() == Rat(1, 2)) return Rat(1, 8);
    AngleClass cls = is_real_angle(theta);
    if (!cls.member || !cls.purely_periodic || !cls.primitive || sgn(theta.value()) == 0)
        throw std::invalid_argument("approximation_delta: requires primitive theta in (0,1/2)");
    const Rat hi = 1 - theta.value();
    std::optional<Rat> best;
    for (const auto& x : theta.orbit()) {
        if (x.value() > hi) {
            Rat gap = x.value() - hi;
            if (!best || gap < *best) best = gap;
        }
    }
    if (!best) throw std::logic_error("approximation_delta: orbit never exceeds 1 - theta");
    return *best / 2;
}

BinaryAngle approximant_below(const BinaryAngle& theta, const ApproximantOptions& opt) {
    Rat delta = approximation_delta(theta);
    if (opt.delta) {
        if (!(Rat(0) < *opt.delta && *opt.delta <= delta))
            throw std::invalid_argument("approximant_below: delta override must be in (0, default]");
        delta = *opt.delta;
    }
    const Rat lo = theta.value() - delta;
    const Rat hi = theta.value();
    for (unsigned q = 1; q <= opt.period_cap; ++q) {
        Int den = (Int(1) << q) - 1;
        // v/(2^q - 1) in (lo, hi), increasing v
        Int v_lo, v_hi;
        Rat lo_scaled = lo * Rat(den);
        Rat hi_scaled = hi * Rat(den);
        mpz_fdiv_q(v_lo.get_mpz_t(), lo_scaled.get_num().get_mpz_t(),
                   lo_scaled.get_den().get_mpz_t());
        v_lo += 1;
        mpz_cdiv_q(v_hi.get_mpz_t(), hi_scaled.get_num().get_mpz_t(),
                   hi_scaled.get_den().get_mpz_t());
        v_hi -= 1;
        for (Int v = v_lo; v <= v_hi; ++v) {
            if (sgn(v) <= 0) continue;
            BinaryAngle cand = BinaryAngle::from_fraction(Rat(v, den));
            if (cand.period_length() != q || !cand.is_purely_periodic()) continue; 
            if (!(lo < cand.value() && cand.value() < hi)) continue;
            if (is_real_angle(cand).member) return cand;
        }
    }
    throw CapExceeded("approximant_below: search exhausted up to period cap " +
                      std::to_string(opt.period_cap));
}

namespace {

BinaryAngle build_checked_sequence_angle(const std::vector<uint8_t>& s_block,
                                         const std::vector<uint8_t>& t_block, unsigned m,
                                         const char* who) {
    std::vector<uint8_t> block = repeat_block(s_block, m);
    block.insert(block.end(), t_block.begin(), t_block.end());
    BinaryAngle out = BinaryAngle::from_periodic(block);
    if (!is_real_angle(out).member)
        throw CertificationError(std::string(who) +
                                 ": constructed angle failed the membership re-check "
                                 "(delta condition violated?)");
    return out;
}

}  // namespace

BinaryAngle approximant_sequence(const BinaryAngle& theta, const BinaryAngle& theta_p,
                                 unsigned m) {
    if (m == 0) throw std::invalid_argument("approximant_sequence: m must be positive");
    require_purely_periodic_member(theta, "approximant_sequence");
    require_purely_periodic_member(theta_p, "approximant_sequence");
    if (!(theta_p.value() < theta.value()))
        throw std::invalid_argument("approximant_sequence: requires theta' < theta");
    return build_checked_sequence_angle(theta.period(), theta_p.period(), m,
                                        "approximant_sequence");
}

BinaryAngle approximant_sequence_pq(const BinaryAngle& theta, const BinaryAngle& theta_p,
                                    unsigned m) {
    if (m == 0) throw std::invalid_argument("approximant_sequence_pq: m must be positive");
    require_purely_periodic_member(theta, "approximant_sequence_pq");
    require_purely_periodic_member(theta_p, "approximant_sequence_pq");
    if (!(theta_p.value() < theta.value()))
        throw std::invalid_argument("approximant_sequence_pq: requires theta' < theta");
    const unsigned p = static_cast<unsigned>(theta.period_length());
    const unsigned q = static_cast<unsigned>(theta_p.period_length());
    return build_checked_sequence_angle(repeat_block(theta.period(), q),
                                        repeat_block(theta_p.period(), p), m,
                                        "approximant_sequence_pq");
}

BinaryAngle gap_root(const BinaryAngle& x, unsigned period_cap) {
    if (!(Rat(0) < x.value() && x.value() < Rat(1, 2)))
        throw std::invalid_argument("gap_root: requires x in (0, 1/2)");
    if (is_real_angle(x).member) throw std::invalid_argument("gap_root: x is a member of R");
    std::vector<uint8_t> prefix;
    for (unsigned p = 1; p <= period_cap; ++p) {
        prefix.push_back(static_cast<uint8_t>(x.digit(p)));
        BinaryAngle cand = BinaryAngle::from_periodic(prefix);
        if (!(cand.value() < x.value())) continue;
        AngleClass cls = is_real_angle(cand);
        if (!cls.member || !cls.purely_periodic) continue;
        if (x.value() < period_doubling(cand).value()) return cand;  // gaps are disjoint
    }
    throw CapExceeded("gap_root: gap root period exceeds the cap " +
                      std::to_string(period_cap));
}

std::vector<BinaryAngle> enumerate_members(unsigned max_period, bool include_zero) {
    std::vector<BinaryAngle> out;
    if (include_zero) out.push_back(BinaryAngle::from_fraction(Int(0), Int(1)));
    for (unsigned q = 1; q <= max_period; ++q) {
        Int den = (Int(1) << q) - 1;
        for (Int v = 1; 2 * v <= den; ++v) {
            BinaryAngle cand = BinaryAngle::from_fraction(Rat(v, den));
            if (cand.period_length() != q || !cand.is_purely_periodic()) continue;
            if (is_real_angle(cand).member) out.push_back(cand);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace kneading
