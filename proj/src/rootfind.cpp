#include "kneading/rootfind.hpp"

#include <utility>
#include <vector>

namespace kneading {

namespace {

using poly::Poly;

Rat dyadic(const Int& num, unsigned long k) {
    Rat r(num);
    mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), k);
    return r;
}

void divide_content(Poly& p) {
    Int g(0);
    for (const Int& c : p) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) return;
    }
    if (sgn(g) == 0 || g == 1) return;
    for (Int& c : p) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

// Subdivision node over [c/2^k, (c+1)/2^k] carrying A(x) ~ p((c+x)/2^k) up to
// a positive scalar, or a candidate exact root at a dyadic point that is
// confirmed once every interval to its left is certified root-free.
struct Node {
    bool exact_candidate = false;
    Int c;
    unsigned long k = 0;
    Poly a;
};

// Refine the isolating interval [lo_num/2^k, (lo_num+1)/2^k], known to hold
// exactly one (simple) root of p, by exact dyadic sign bisection.
RootEnclosure refine(const Poly& p, Int lo_num, unsigned long k, const Rat& tol,
                     const RootFindOptions& opt, unsigned long nodes) {
    RootEnclosure res;
    res.has_root = true;
    res.nodes = nodes;
    Int hi_num = lo_num + 1;
    int hi_sign = poly::sign_at_dyadic(p, hi_num, k);
    if (hi_sign > 0)
        throw CertificationError("root refinement: inconsistent Descartes isolation");
    if (hi_sign == 0 && k == 0)
        throw CertificationError("root refinement: boundary root at t = 1");
    for (;;) {
        Rat width = dyadic(Int(1), k);
        if (width <= tol && hi_sign < 0) break;
        if (++res.bisections > opt.max_bisections)
            throw CapExceeded("root refinement: bisection cap exceeded");
        Int mid = lo_num * 2 + 1;
        ++k;
        lo_num *= 2;
        hi_num *= 2;
        int s = poly::sign_at_dyadic(p, mid, k);
        if (s == 0) {
            // the unique root of the bracket, hit exactly
            res.lo = res.hi = dyadic(mid, k);
            res.exact = true;
            return res;
        }
        if (s > 0)
            lo_num = mid;
        else {
            hi_num = mid;
            hi_sign = -1;
        }
    }
    res.lo = dyadic(lo_num, k);
    res.hi = dyadic(hi_num, k);
    return res;
}

}  // namespace

RootEnclosure minimal_root01(Poly p, const Rat& tol, const RootFindOptions& opt) {
    poly::trim(p);
    if (p.empty()) throw std::invalid_argument("minimal_root01: zero polynomial");
    if (sgn(p[0]) <= 0) throw std::invalid_argument("minimal_root01: requires p(0) > 0");
    if (sgn(tol) <= 0) throw std::invalid_argument("minimal_root01: tol must be positive");
    poly::strip_one_minus_t(p);

    RootEnclosure none;
    if (poly::degree(p) == 0) return none;

    std::vector<Node> stack;
    stack.push_back({false, Int(0), 0, p});
    unsigned long nodes = 0;

    while (!stack.empty()) {
        Node n = std::move(stack.back());
        stack.pop_back();
        if (n.exact_candidate) {
            // everything left of this point is root-free: exact minimal root
            RootEnclosure res;
            res.has_root = true;
            res.exact = true;
            res.lo = res.hi = dyadic(n.c, n.k);
            res.nodes = nodes;
            return res;
        }
        if (++nodes > opt.max_nodes) throw CapExceeded("minimal_root01: node cap exceeded");
        int var = poly::descartes_count_01(n.a);
        if (var == 0) continue;
        if (var == 1) return refine(p, n.c, n.k, tol, opt, nodes);
        if (n.k >= static_cast<unsigned long>(opt.max_vca_depth))
            throw CertificationError(
                "minimal_root01: variation count stuck >= 2 at depth cap "
                "(suspected multiple root; contradicts simplicity of the minimal root)");

        Poly left = poly::scale_half(n.a);
        divide_content(left);
        Int mid_val(0);
        for (const Int& c : left) mid_val += c;  // left(1) = value at the midpoint
        Poly right = left;
        poly::taylor_shift_one(right);
        divide_content(right);

        Int c2 = n.c * 2;
        stack.push_back({false, c2 + 1, n.k + 1, std::move(right)});
        if (sgn(mid_val) == 0)
            stack.push_back({true, c2 + 1, n.k + 1, {}});
        stack.push_back({false, std::move(c2), n.k + 1, std::move(left)});
    }
    none.nodes = nodes;
    return none;
}

}  // namespace kneading
