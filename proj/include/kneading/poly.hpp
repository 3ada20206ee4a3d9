#pragma once

#include <vector>

#include "kneading/numeric.hpp"

namespace kneading::poly {

// Dense integer polynomial, coefficient of t^i at index i. Kept trimmed
// (no zero leading coefficient) by the operations below.
using Poly = std::vector<Int>;

void trim(Poly& p);
int degree(const Poly& p);  // -1 for the zero polynomial

Poly add(const Poly& a, const Poly& b);
Poly sub(const Poly& a, const Poly& b);
Poly mul(const Poly& a, const Poly& b);
Poly derivative(const Poly& p);

// Exact division; returns false (and leaves q unspecified) if b does not
// divide a exactly.
bool divide_exact(const Poly& a, const Poly& b, Poly& q);

// Divides out the highest power of (1 - t) and returns its multiplicity.
unsigned strip_one_minus_t(Poly& p);

// p(num/2^k) * 2^(k*deg p), an exact integer sharing the sign of p(num/2^k).
Int eval_dyadic_scaled(const Poly& p, const Int& num, unsigned long k);
int sign_at_dyadic(const Poly& p, const Int& num, unsigned long k);

Rat eval_rat(const Poly& p, const Rat& t);

// In-place p(x) <- p(x+1).
void taylor_shift_one(Poly& p);
// p(x/2) * 2^d, d = deg p.
Poly scale_half(const Poly& p);
// p(a + w*x) * 2^(k*deg p) for a = anum/2^k, w = wnum/2^k.
Poly compose_affine_dyadic(const Poly& p, const Int& anum, const Int& wnum, unsigned long k);

// Descartes bound for the number of roots in the open interval (0,1),
// computed as the sign-variation count of (1+x)^d p(1/(1+x)). The count is
// exact for 0 and 1; any value >= 2 is reported as 2.
int descartes_count_01(const Poly& p);

int sign_variations(const Poly& p);

}  // namespace kneading::poly
