#include "kneading/holder.hpp"

#include <algorithm>
#include <cmath>

namespace kneading {

namespace {

// van der Corput radical inverse in (0,1), exact dyadic
Rat van_der_corput(unsigned s) {
    Rat v(0);
    long bit = -1;
    while (s) {
        if (s & 1) v += pow2(bit);
        s >>= 1;
        --bit;
    }
    return v;
}

struct FitResult {
    double slope = 0;
    double residual = 0;
};

FitResult ols(const std::vector<HolderSample>& samples) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    size_t n = 0;
    for (const auto& s : samples) {
        if (!s.used) continue;
        sx += s.log2_dtheta;
        sy += s.log2_dh;
        sxx += s.log2_dtheta * s.log2_dtheta;
        sxy += s.log2_dtheta * s.log2_dh;
        ++n;
    }
    FitResult out;
    double denom = n * sxx - sx * sx;
    if (n < 2 || denom == 0) return out;
    out.slope = (n * sxy - sx * sy) / denom;
    double intercept = (sy - out.slope * sx) / n;
    for (const auto& s : samples) {
        if (!s.used) continue;
        double dev = std::abs(s.log2_dh - (out.slope * s.log2_dtheta + intercept));
        out.residual = std::max(out.residual, dev);
    }
    return out;
}

}  // namespace

HolderEstimate local_exponent(const BinaryAngle& theta, const HolderOptions& opt) {
    if (opt.j_min < 2 || opt.j_min >= opt.j_max)
        throw std::invalid_argument("local_exponent: requires 2 <= j_min < j_max");
    if (theta.value() > Rat(1, 2))
        throw std::invalid_argument("local_exponent: requires theta <= 1/2");
    HolderEstimate out;
    out.j_min = opt.j_min;
    out.j_max = opt.j_max;
    out.samples_per_scale = opt.samples_per_scale;
    out.side = opt.side;

    // the center entropy once, at a tolerance fine enough for every scale
    EntropyOptions center_opt;
    center_opt.tol = pow2(-(static_cast<long>(opt.j_max) + 48));
    EntropyResult e_center = entropy(theta, center_opt);

    for (int j = opt.j_min; j <= opt.j_max; ++j) {
        for (unsigned s = 1; s <= opt.samples_per_scale; ++s) {
            // offsets in (2^-j, 2^-j+1): low-discrepancy, exact dyadic
            Rat offset = (1 + van_der_corput(s)) * pow2(-j);
            for (int dir : {-1, +1}) {
                if (dir < 0 && opt.side == Side::Right) continue;
                if (dir > 0 && opt.side == Side::Left) continue;
                Rat v = theta.value() + dir * offset;
                if (!(Rat(0) <= v && v <= Rat(1, 2))) continue;
                HolderSample sample;
                sample.scale_j = j;
                sample.dtheta = dir * offset;
                BinaryAngle other = BinaryAngle::from_fraction(v);

                EntropyOptions eo;
                eo.tol = pow2(-(j + 24));
                eo.certify_derivative = false;
                DoubleInterval dh{0, 0};
                bool definite = false;
                for (int round = 0; round <= opt.refine_rounds; ++round) {
                    EntropyResult e_other = entropy(other, eo);
                    dh = entropy_difference(e_center, e_other);
                    if (dh.lo > 0 || dh.hi < 0) {
                        definite = true;
                        break;
                    }
                    if (dh.lo == 0 && dh.hi == 0) break;  // exactly equal (both no-root)
                    eo.tol /= Int(1) << 12;
                }
                sample.dh = dh;
                if (definite) {
                    sample.used = true;
                    double mag = std::max(std::abs(dh.lo), std::abs(dh.hi));
                    double mag_lo = std::min(std::abs(dh.lo), std::abs(dh.hi));
                    sample.log2_dh = 0.5 * (std::log2(mag) + std::log2(mag_lo));
                    sample.log2_dtheta = to_double_up(offset) == 0
                                             ? 0
                                             : std::log2(std::abs(to_double_up(offset)));
                }
                out.samples.push_back(std::move(sample));
            }
        }
    }
    out.used_pairs = static_cast<size_t>(
        std::count_if(out.samples.begin(), out.samples.end(),
                      [](const HolderSample& s) { return s.used; }));
    if (out.used_pairs < 2) {
        out.plateau = true;
        return out;
    }
    FitResult fit = ols(out.samples);
    out.exponent = fit.slope;
    out.residual = fit.residual;
    return out;
}

UpperBoundProbe upper_bound_probe(const BinaryAngle& theta,
                                  const std::vector<BinaryAngle>& pairs) {
    UpperBoundProbe out;
    EntropyOptions eo;
    eo.tol = pow2(-80);
    eo.certify_derivative = false;
    EntropyResult e_center = entropy(theta, eo);
    double h = e_center.entropy.mid();
    if (h <= 0) throw std::invalid_argument("upper_bound_probe: requires h(theta) > 0");
    double kappa = h / std::log(2.0);

    struct Entry {
        double dist;
        double ratio;
    };
    std::vector<Entry> entries;
    for (const auto& p : pairs) {
        if (!(p.value() < theta.value()))
            throw std::invalid_argument("upper_bound_probe: pairs must lie below theta");
        EntropyResult e = entropy(p, eo);
        DoubleInterval dh = entropy_difference(e_center, e);
        double mag = std::max(std::abs(dh.lo), std::abs(dh.hi));
        double dist = to_double_up(theta.value() - p.value());
        double ratio = mag / std::pow(dist, kappa);
        entries.push_back({dist, ratio});
        out.ratios.push_back(ratio);
    }
    for (double r : out.ratios) out.c_hat = std::max(out.c_hat, r);
    if (entries.empty()) return out;
    // stability: the constant from the half of the pairs nearest theta must
    // not blow up against the full constant
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.dist < b.dist; });
    double near = 0;
    for (size_t i = 0; i < (entries.size() + 1) / 2; ++i) near = std::max(near, entries[i].ratio);
    out.holds = std::isfinite(out.c_hat) && near <= 2 * out.c_hat + 1e-12;
    return out;
}

LowerBoundProbe lower_bound_probe(const BinaryAngle& theta, unsigned m_max) {
    if (m_max == 0) throw std::invalid_argument("lower_bound_probe: m_max must be positive");
    AngleClass cls = is_real_angle(theta);
    if (!cls.member || !cls.purely_periodic || !cls.primitive || sgn(theta.value()) == 0)
        throw std::invalid_argument("lower_bound_probe: requires a primitive angle in (0,1/2)");
    LowerBoundProbe out;
    out.weak = (m_max == 1);

    BinaryAngle theta_p = approximant_below(theta);
    const unsigned p = static_cast<unsigned>(theta.period_length());
    const unsigned q = static_cast<unsigned>(theta_p.period_length());
    const unsigned long P = static_cast<unsigned long>(p) * q;

    EntropyOptions eo;
    eo.tol = pow2(-(static_cast<long>(P) * (static_cast<long>(m_max) + 1) + 48));
    eo.certify_derivative = false;
    EntropyResult e_center = entropy(theta, eo);
    if (!e_center.has_root())
        throw std::invalid_argument("lower_bound_probe: theta has zero entropy");
    double kappa = e_center.entropy.mid() / std::log(2.0);

    bool all_equal = true;
    double c_min = 0;
    bool first = true;
    for (unsigned m = 1; m <= m_max; ++m) {
        BinaryAngle tm = approximant_sequence_pq(theta, theta_p, m);
        out.theta_m.push_back(tm);
        Rat dist = abs(theta.value() - tm.value());
        if (dist > pow2(-static_cast<long>(m * P)))
            throw CertificationError("lower_bound_probe: |theta - theta_m| > 2^(-mP)");
        EntropyResult em = entropy(tm, eo);
        // r_m - r as a certified interval; both enclosures are exact rationals
        Rat diff_lo = (em.has_root() ? em.r_lo : Rat(1)) - e_center.r_hi;
        if (sgn(diff_lo) <= 0) {
            out.per_m.push_back(0);
            continue;
        }
        all_equal = false;
        double c = to_double_down(diff_lo) / std::pow(to_double_up(dist), kappa);
        out.per_m.push_back(c);
        if (first || c < c_min) c_min = c;
        first = false;
    }
    if (all_equal) {
        out.plateau = true;  // r_m = r for every m
        return out;
    }
    out.c_hat = c_min;
    out.holds = !out.weak && c_min > 0 &&
                std::all_of(out.per_m.begin(), out.per_m.end(), [](double c) { return c > 0; });
    return out;
}

std::vector<uint8_t> thue_morse(unsigned n, unsigned cap) {
    if (n > cap) throw CapExceeded("thue_morse: n exceeds the configured cap");
    std::vector<uint8_t> s{0};
    for (unsigned i = 0; i < n; ++i) {
        std::vector<uint8_t> c = complement(s);
        s.insert(s.end(), c.begin(), c.end());
    }
    return s;
}

void theta_star_bracket(size_t digits, Rat& lo, Rat& hi) {
    unsigned n = 0;
    while ((size_t(1) << n) < digits) ++n;
    std::vector<uint8_t> s = thue_morse(n, 64);
    s.resize(digits);
    lo = Rat(0);
    for (size_t k = 0; k < digits; ++k)
        if (s[k]) lo += pow2(-static_cast<long>(k + 1));
    hi = lo + pow2(-static_cast<long>(digits));
}

std::vector<FeigenbaumRow> feigenbaum_ladder(unsigned n_max, double tol) {
    std::vector<FeigenbaumRow> rows;
    for (unsigned n = 0; n <= n_max; ++n) {
        FeigenbaumRow row;
        row.n = n;
        std::vector<uint8_t> s = thue_morse(n);
        row.eta_n = BinaryAngle::from_periodic(s);
        row.theta_n = BinaryAngle::from_digits(s, complement(s));

        EntropyOptions eo;
        eo.tol = Rat(tol) * pow2(-4);
        EntropyResult e = entropy(row.theta_n, eo);
        row.h = e.entropy;

        // |theta_n - theta_star| from a Thue-Morse prefix well past the
        // 3*2^n digit agreement
        size_t prefix = (size_t(4) << n) + 64;
        Rat star_lo, star_hi;
        theta_star_bracket(prefix, star_lo, star_hi);
        row.gap_lo = row.theta_n.value() - star_hi;
        row.gap_hi = row.theta_n.value() - star_lo;
        row.eta_gap_lo = star_lo - row.eta_n.value();
        row.eta_gap_hi = star_hi - row.eta_n.value();
        if (sgn(row.gap_lo) < 0 || sgn(row.eta_gap_lo) < 0)
            throw CertificationError("feigenbaum_ladder: theta_star bracket out of order");
        row.modulus_product =
            e.entropy.mid() * -std::log(0.5 * (to_double_down(row.gap_lo) + to_double_up(row.gap_hi)));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace kneading
