#include "kneading/numeric.hpp"

#include <mpfr.h>

#include <atomic>
#include <cstdlib>

namespace kneading {

namespace {

std::atomic<int> g_prec_bits{0};

int env_precision() {
    const char* s = std::getenv("KNEADING_PREC_BITS");
    if (s != nullptr) {
        int v = std::atoi(s);
        if (v >= 24 && v <= 16384) return v;
    }
    return 128;
}

// RAII wrapper around a single mpfr_t.
class Mpfr {
  public:
    explicit Mpfr(int prec) { mpfr_init2(x_, prec); }
    ~Mpfr() { mpfr_clear(x_); }
    Mpfr(const Mpfr&) = delete;
    Mpfr& operator=(const Mpfr&) = delete;
    mpfr_ptr get() { return x_; }

  private:
    mpfr_t x_;
};

double log_rat_dir(const Rat& x, int prec, mpfr_rnd_t rnd) {
    Mpfr t(prec);
    mpfr_set_q(t.get(), x.get_mpq_t(), rnd);
    mpfr_log(t.get(), t.get(), rnd);
    return mpfr_get_d(t.get(), rnd);
}

}  // namespace

int default_precision_bits() {
    int v = g_prec_bits.load();
    if (v == 0) {
        v = env_precision();
        g_prec_bits.store(v);
    }
    return v;
}

void set_default_precision_bits(int bits) { g_prec_bits.store(bits); }

DoubleInterval log_bounds(const Rat& x, int prec_bits) {
    if (sgn(x) <= 0) throw std::invalid_argument("log_bounds: argument must be positive");
    int prec = prec_bits > 0 ? prec_bits : default_precision_bits();
    return {log_rat_dir(x, prec, MPFR_RNDD), log_rat_dir(x, prec, MPFR_RNDU)};
}

DoubleInterval neg_log_bounds(const Rat& lo, const Rat& hi, int prec_bits) {
    if (sgn(lo) <= 0 || hi > 1) throw std::invalid_argument("neg_log_bounds: need 0 < lo <= hi <= 1");
    int prec = prec_bits > 0 ? prec_bits : default_precision_bits();
    // -log is decreasing: lower endpoint from hi, upper from lo.
    double out_lo = -log_rat_dir(hi, prec, MPFR_RNDU);
    double out_hi = -log_rat_dir(lo, prec, MPFR_RNDD);
    return {out_lo, out_hi};
}

DoubleInterval log_ratio_bounds(const Rat& num_lo, const Rat& num_hi, const Rat& base,
                                int prec_bits) {
    if (sgn(num_lo) <= 0 || base <= 1)
        throw std::invalid_argument("log_ratio_bounds: need num > 0, base > 1");
    int prec = prec_bits > 0 ? prec_bits : default_precision_bits();
    Mpfr a(prec), b(prec), r(prec);
    DoubleInterval out;
    // lower: round numerator log down; if >= 0 divide by log(base) rounded up,
    // else rounded down (dividing a negative by a smaller positive lowers it).
    mpfr_set_q(a.get(), num_lo.get_mpq_t(), MPFR_RNDD);
    mpfr_log(a.get(), a.get(), MPFR_RNDD);
    bool neg = mpfr_sgn(a.get()) < 0;
    mpfr_set_q(b.get(), base.get_mpq_t(), neg ? MPFR_RNDD : MPFR_RNDU);
    mpfr_log(b.get(), b.get(), neg ? MPFR_RNDD : MPFR_RNDU);
    mpfr_div(r.get(), a.get(), b.get(), MPFR_RNDD);
    out.lo = mpfr_get_d(r.get(), MPFR_RNDD);

    mpfr_set_q(a.get(), num_hi.get_mpq_t(), MPFR_RNDU);
    mpfr_log(a.get(), a.get(), MPFR_RNDU);
    neg = mpfr_sgn(a.get()) < 0;
    mpfr_set_q(b.get(), base.get_mpq_t(), neg ? MPFR_RNDU : MPFR_RNDD);
    mpfr_log(b.get(), b.get(), neg ? MPFR_RNDU : MPFR_RNDD);
    mpfr_div(r.get(), a.get(), b.get(), MPFR_RNDU);
    out.hi = mpfr_get_d(r.get(), MPFR_RNDU);
    return out;
}

double to_double_down(const Rat& x) {
    Mpfr t(64);
    mpfr_set_q(t.get(), x.get_mpq_t(), MPFR_RNDD);
    return mpfr_get_d(t.get(), MPFR_RNDD);
}

double to_double_up(const Rat& x) {
    Mpfr t(64);
    mpfr_set_q(t.get(), x.get_mpq_t(), MPFR_RNDU);
    return mpfr_get_d(t.get(), MPFR_RNDU);
}

Rat pow2(long e) {
    Rat r(1);
    if (e >= 0) {
        mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<unsigned long>(e));
    } else {
        mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<unsigned long>(-e));
    }
    return r;
}

}  // namespace kneading
