#include "kneading/poly.hpp"

#include <algorithm>

namespace kneading::poly {

void trim(Poly& p) {
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

int degree(const Poly& p) { return static_cast<int>(p.size()) - 1; }

Poly add(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()));
    for (size_t i = 0; i < r.size(); ++i) {
        if (i < a.size()) r[i] += a[i];
        if (i < b.size()) r[i] += b[i];
    }
    trim(r);
    return r;
}

Poly sub(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()));
    for (size_t i = 0; i < r.size(); ++i) {
        if (i < a.size()) r[i] += a[i];
        if (i < b.size()) r[i] -= b[i];
    }
    trim(r);
    return r;
}

Poly mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i) {
        if (sgn(a[i]) == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    trim(r);
    return r;
}

Poly derivative(const Poly& p) {
    if (p.size() <= 1) return {};
    Poly r(p.size() - 1);
    for (size_t i = 1; i < p.size(); ++i) r[i - 1] = p[i] * static_cast<long>(i);
    trim(r);
    return r;
}

bool divide_exact(const Poly& a, const Poly& b, Poly& q) {
    Poly rem = a;
    trim(rem);
    Poly bb = b;
    trim(bb);
    if (bb.empty()) return false;
    if (rem.size() < bb.size()) {
        q = {};
        trim(rem);
        return rem.empty();
    }
    q.assign(rem.size() - bb.size() + 1, Int(0));
    for (int i = static_cast<int>(rem.size()) - 1; i >= static_cast<int>(bb.size()) - 1; --i) {
        if (sgn(rem[i]) == 0) continue;
        Int c;
        mpz_tdiv_qr(c.get_mpz_t(), rem[i].get_mpz_t(), rem[i].get_mpz_t(),
                    bb.back().get_mpz_t());
        if (sgn(rem[i]) != 0) return false;  // leading coeff does not divide
        size_t off = i - (bb.size() - 1);
        q[off] = c;
        for (size_t j = 0; j + 1 < bb.size(); ++j) rem[off + j] -= c * bb[j];
    }
    trim(rem);
    trim(q);
    return rem.empty();
}

unsigned strip_one_minus_t(Poly& p) {
    unsigned e = 0;
    for (;;) {
        Int at_one(0);
        for (const Int& c : p) at_one += c;
        if (sgn(at_one) != 0 || p.size() <= 1) break;
        // synthetic division by (1 - t): p = (1-t) * q with
        // q_i = sum_{j<=i} p_j (partial sums), degree drops by one.
        Poly q(p.size() - 1);
        Int acc(0);
        for (size_t i = 0; i + 1 < p.size(); ++i) {
            acc += p[i];
            q[i] = acc;
        }
        p = std::move(q);
        trim(p);
        ++e;
    }
    return e;
}

Int eval_dyadic_scaled(const Poly& p, const Int& num, unsigned long k) {
    if (p.empty()) return Int(0);
    Int v = p.back();
    Int shifted;
    for (int i = static_cast<int>(p.size()) - 2; i >= 0; --i) {
        v *= num;
        if (sgn(p[i]) != 0) {
            mpz_mul_2exp(shifted.get_mpz_t(), p[i].get_mpz_t(),
                         k * (p.size() - 1 - static_cast<size_t>(i)));
            v += shifted;
        }
    }
    return v;
}

int sign_at_dyadic(const Poly& p, const Int& num, unsigned long k) {
    return sgn(eval_dyadic_scaled(p, num, k));
}

Rat eval_rat(const Poly& p, const Rat& t) {
    Rat v(0);
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) {
        v *= t;
        v += Rat(p[i]);
    }
    return v;
}

void taylor_shift_one(Poly& p) {
    // Pascal cascade: classic O(d^2) additions.
    const int d = degree(p);
    for (int i = 0; i < d; ++i)
        for (int j = d - 1; j >= i; --j) p[j] += p[j + 1];
}

Poly scale_half(const Poly& p) {
    Poly r(p.size());
    const size_t d = p.size() - 1;
    for (size_t i = 0; i < p.size(); ++i) {
        mpz_mul_2exp(r[i].get_mpz_t(), p[i].get_mpz_t(), d - i);
    }
    trim(r);
    return r;
}

Poly compose_affine_dyadic(const Poly& p, const Int& anum, const Int& wnum, unsigned long k) {
    // Horner in the polynomial ring: R <- R*(anum + wnum*x) + p_j * 2^(k*(d-j)).
    if (p.empty()) return {};
    const size_t d = p.size() - 1;
    Poly r{p.back()};
    Int shifted;
    for (int j = static_cast<int>(d) - 1; j >= 0; --j) {
        Poly next(r.size() + 1);
        for (size_t i = 0; i < r.size(); ++i) {
            next[i] += r[i] * anum;
            next[i + 1] += r[i] * wnum;
        }
        mpz_mul_2exp(shifted.get_mpz_t(), p[j].get_mpz_t(), k * (d - static_cast<size_t>(j)));
        next[0] += shifted;
        r = std::move(next);
    }
    trim(r);
    return r;
}

int sign_variations(const Poly& p) {
    int var = 0;
    int last = 0;
    for (const Int& c : p) {
        int s = sgn(c);
        if (s == 0) continue;
        if (last != 0 && s != last) ++var;
        last = s;
    }
    return var;
}

int descartes_count_01(const Poly& p) {
    Poly b(p.rbegin(), p.rend());
    trim(b);
    taylor_shift_one(b);
    int var = sign_variations(b);
    return var >= 2 ? 2 : var;
}

}  // namespace kneading::poly
