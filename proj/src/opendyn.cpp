#include "kneading/opendyn.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "kneading/poly.hpp"

namespace kneading {

namespace {

using Matrix = std::vector<std::vector<Int>>;

Matrix adjacency_matrix(const SurvivorAutomaton& a) {
    size_t n = a.state_count();
    Matrix m(n, std::vector<Int>(n, Int(0)));
    for (size_t i = 0; i < n; ++i)
        for (uint32_t j : a.edges[i]) m[i][j] = 1;
    return m;
}

// char(x) = x^n + c_1 x^(n-1) + ... + c_n by Faddeev-LeVerrier (exact; the
// trace divisions are exact for integer matrices).
poly::Poly characteristic_polynomial(const Matrix& m) {
    const size_t n = m.size();
    Matrix mk = m;
    std::vector<Int> c(n + 1);
    c[0] = 1;
    for (size_t k = 1; k <= n; ++k) {
        if (k > 1) {
            // mk = m * (mk_prev + c_{k-1} I)
            Matrix tmp = mk;
            for (size_t i = 0; i < n; ++i) tmp[i][i] += c[k - 1];
            Matrix next(n, std::vector<Int>(n, Int(0)));
            for (size_t i = 0; i < n; ++i)
                for (size_t l = 0; l < n; ++l) {
                    if (sgn(m[i][l]) == 0) continue;
                    for (size_t j = 0; j < n; ++j) next[i][j] += m[i][l] * tmp[l][j];
                }
            mk = std::move(next);
        }
        Int tr(0);
        for (size_t i = 0; i < n; ++i) tr += mk[i][i];
        mpz_divexact_ui(tr.get_mpz_t(), tr.get_mpz_t(), static_cast<unsigned long>(k));
        c[k] = -tr;
    }
    poly::Poly p(n + 1);
    for (size_t k = 0; k <= n; ++k) p[n - k] = c[k];  // x^n + c1 x^{n-1} + ...
    return p;
}

// Sturm chain with sign-correct pseudo-remainders reduced to primitive part.
std::vector<poly::Poly> sturm_chain(const poly::Poly& p) {
    std::vector<poly::Poly> chain;
    poly::Poly a = p;
    poly::trim(a);
    chain.push_back(a);
    poly::Poly b = poly::derivative(a);
    while (!b.empty()) {
        chain.push_back(b);
        // pseudo-remainder of a by b, sign-corrected and made primitive
        poly::Poly r = a;
        const Int& lc = b.back();
        int delta = poly::degree(r) - poly::degree(b);
        if (delta < 0) break;
        Int scale(1);
        for (int i = 0; i <= delta; ++i) scale *= lc;
        for (Int& x : r) x *= scale;
        for (int i = poly::degree(r); i >= poly::degree(b); --i) {
            if (sgn(r[i]) == 0) continue;
            Int q;
            mpz_divexact(q.get_mpz_t(), r[i].get_mpz_t(), b.back().get_mpz_t());
            size_t off = i - poly::degree(b);
            for (size_t j = 0; j < b.size(); ++j) r[off + j] -= q * b[j];
        }
        poly::trim(r);
        if (sgn(scale) < 0)
            for (Int& x : r) x = -x;  // undo the negative dividend scaling
        for (Int& x : r) x = -x;      // Sturm: next = -(a mod b)
        // primitive part
        Int g(0);
        for (const Int& x : r) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        if (sgn(g) != 0 && g != 1)
            for (Int& x : r) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
        a = std::move(b);
        b = std::move(r);
    }
    return chain;
}

int sturm_variations_at(const std::vector<poly::Poly>& chain, const Rat& x) {
    int var = 0, last = 0;
    for (const auto& p : chain) {
        int s = sgn(poly::eval_rat(p, x));
        if (s == 0) continue;
        if (last != 0 && s != last) ++var;
        last = s;
    }
    return var;
}

// Largest real root of p in (1/2, hi0] by Sturm bisection.
void largest_root_enclosure(const poly::Poly& p, const Rat& hi0, const Rat& tol, Rat& lo_out,
                            Rat& hi_out) {
    auto chain = sturm_chain(p);
    Rat lo(1, 2), hi = hi0;
    int v_hi = sturm_variations_at(chain, hi);
    auto count_above = [&](const Rat& x) { return sturm_variations_at(chain, x) - v_hi; };
    if (count_above(lo) < 1)
        throw CertificationError("spectral radius: no eigenvalue above 1/2");
    while (hi - lo > tol) {
        Rat mid = (lo + hi) / 2;
        if (count_above(mid) >= 1)
            lo = mid;
        else
            hi = mid;
    }
    lo_out = lo;
    hi_out = hi;
}

// Collatz-Wielandt bounds for large matrices: with v = (I+M)^K 1 > 0,
// min_i (Mv)_i/v_i <= lambda <= max_i (Mv)_i/v_i.
void power_iteration_enclosure(const Matrix& m_in, const Rat& tol, unsigned long cap,
                               Rat& lo_out, Rat& hi_out) {
    // trim states with no outgoing edges (transient; spectral radius unchanged)
    size_t n = m_in.size();
    std::vector<char> alive(n, 1);
    for (bool changed = true; changed;) {
        changed = false;
        for (size_t i = 0; i < n; ++i) {
            if (!alive[i]) continue;
            bool any = false;
            for (size_t j = 0; j < n; ++j)
                if (alive[j] && sgn(m_in[i][j]) != 0) any = true;
            if (!any) {
                alive[i] = 0;
                changed = true;
            }
        }
    }
    std::vector<size_t> idx;
    for (size_t i = 0; i < n; ++i)
        if (alive[i]) idx.push_back(i);
    if (idx.empty()) throw CertificationError("spectral radius: empty recurrent core");
    const size_t k = idx.size();
    Matrix m(k, std::vector<Int>(k));
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j) m[i][j] = m_in[idx[i]][idx[j]];

    std::vector<Int> v(k, Int(1));
    for (unsigned long it = 0; it < cap; ++it) {
        std::vector<Int> mv(k, Int(0));
        for (size_t i = 0; i < k; ++i)
            for (size_t j = 0; j < k; ++j)
                if (sgn(m[i][j]) != 0) mv[i] += v[j];
        Rat lo, hi;
        bool first = true;
        for (size_t i = 0; i < k; ++i) {
            Rat ratio(mv[i], v[i]);
            ratio.canonicalize();
            if (first || ratio < lo) lo = ratio;
            if (first || ratio > hi) hi = ratio;
            first = false;
        }
        if (hi - lo <= tol) {
            lo_out = lo;
            hi_out = hi;
            return;
        }
        // v <- (I + M) v
        for (size_t i = 0; i < k; ++i) v[i] += mv[i];
    }
    throw CertificationError("spectral radius: power iteration did not converge within cap");
}

}  // namespace

SurvivorAutomaton build_automaton(const BinaryAngle& theta, const AutomatonOptions& opt) {
    const Rat& t = theta.value();
    if (!(Rat(0) < t && t <= Rat(1, 2)))
        throw std::invalid_argument("build_automaton: requires theta in (0, 1/2]");
    SurvivorAutomaton a;
    a.from_first_iterate = opt.from_first_iterate;
    a.hole_lo = t;
    a.hole_hi = 1 - t;

    std::set<Rat> endpoints{Rat(0), Rat(1, 2), Rat(1), t, 1 - t};
    for (const auto& x : theta.orbit()) endpoints.insert(x.value());
    for (const auto& x : BinaryAngle::from_fraction(1 - t).orbit()) endpoints.insert(x.value());

    std::vector<Rat> pts(endpoints.begin(), endpoints.end());
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        SurvivorAutomaton::Piece p;
        p.lo = pts[i];
        p.hi = pts[i + 1];
        p.in_hole = (a.hole_lo < a.hole_hi) && (p.lo >= a.hole_lo && p.hi <= a.hole_hi);
        p.digit = (p.lo >= Rat(1, 2)) ? 1 : 0;
        a.pieces.push_back(std::move(p));
    }

    // image of piece i under D and exact Markov verification
    const size_t np = a.pieces.size();
    std::vector<std::pair<Rat, Rat>> image(np);
    for (size_t i = 0; i < np; ++i) {
        const auto& p = a.pieces[i];
        if (p.hi <= Rat(1, 2))
            image[i] = {2 * p.lo, 2 * p.hi};
        else
            image[i] = {2 * p.lo - 1, 2 * p.hi - 1};
    }
    std::vector<std::vector<uint32_t>> contains(np);
    for (size_t i = 0; i < np; ++i) {
        Rat covered(0);
        for (size_t j = 0; j < np; ++j) {
            const auto& q = a.pieces[j];
            if (q.lo >= image[i].first && q.hi <= image[i].second) {
                contains[i].push_back(static_cast<uint32_t>(j));
                covered += q.hi - q.lo;
            }
        }
        if (covered != image[i].second - image[i].first)
            throw CertificationError(
                "build_automaton: Markov property violated (image of a piece is not a union "
                "of pieces) -- endpoint orbit bookkeeping bug");
    }

    // automaton states: non-hole pieces, plus hole pieces as transient
    // sources in the K-tilde variant
    std::vector<int> state_of(np, -1);
    for (size_t i = 0; i < np; ++i) {
        if (!a.pieces[i].in_hole || opt.from_first_iterate) {
            state_of[i] = static_cast<int>(a.states.size());
            a.states.push_back(static_cast<uint32_t>(i));
        }
    }
    a.edges.assign(a.states.size(), {});
    for (size_t s = 0; s < a.states.size(); ++s) {
        for (uint32_t j : contains[a.states[s]]) {
            if (a.pieces[j].in_hole) continue;  // targets must survive
            a.edges[s].push_back(static_cast<uint32_t>(state_of[j]));
        }
    }

    Matrix m = adjacency_matrix(a);
    if (a.state_count() <= opt.sturm_state_limit) {
        poly::Poly chi = characteristic_polynomial(m);
        Rat hi0(0);
        for (const auto& row : a.edges)
            if (Rat(static_cast<long>(row.size())) > hi0) hi0 = Rat(static_cast<long>(row.size()));
        hi0 += 1;
        largest_root_enclosure(chi, hi0, opt.lambda_tol, a.lambda_lo, a.lambda_hi);
    } else {
        power_iteration_enclosure(m, opt.lambda_tol, opt.power_iteration_cap, a.lambda_lo,
                                  a.lambda_hi);
    }
    // 0 is a fixed point outside the hole, so lambda >= 1 always
    if (a.lambda_lo < 1) a.lambda_lo = 1;
    if (a.lambda_hi < a.lambda_lo) a.lambda_hi = a.lambda_lo;
    return a;
}

DoubleInterval dimension(const SurvivorAutomaton& a) {
    DoubleInterval out = log_ratio_bounds(a.lambda_lo, a.lambda_hi, Rat(2));
    if (out.lo < 0) out.lo = 0;
    if (out.hi > 1) out.hi = 1;
    if (out.hi < out.lo) out.hi = out.lo;
    return out;
}

DoubleInterval dimension(const BinaryAngle& theta, double tol) {
    AutomatonOptions opt;
    opt.lambda_tol = Rat(tol) / 2;
    return dimension(build_automaton(theta, opt));
}

namespace {

// Word automaton for cylinder counting. Interval pieces alone undercount:
// orbits running along piece corners (e.g. the hole boundary itself, which
// survives since the hole is open) realize words without a full Markov edge.
// Surviving partition endpoints therefore enter as pinned singleton states;
// the point 1/2 splits into its two expansions.
Int automaton_count(const SurvivorAutomaton& a, unsigned n) {
    struct Single {
        Rat point;
        int digit;
    };
    const bool has_hole = a.hole_lo < a.hole_hi;
    std::set<Rat> endpoint_set;
    for (const auto& p : a.pieces) {
        endpoint_set.insert(p.lo);
        endpoint_set.insert(p.hi);
    }
    std::vector<Single> singles;
    for (const Rat& e : endpoint_set) {
        if (has_hole && a.hole_lo < e && e < a.hole_hi) continue;
        if (e == Rat(1, 2)) {
            singles.push_back({e, 0});
            singles.push_back({e, 1});
        } else {
            singles.push_back({e, e < Rat(1, 2) ? 0 : 1});
        }
    }

    std::vector<uint32_t> interval_pieces;  // indices into a.pieces, non-hole
    for (uint32_t i = 0; i < a.pieces.size(); ++i)
        if (!a.pieces[i].in_hole) interval_pieces.push_back(i);

    const size_t n_int = interval_pieces.size();
    const size_t ns = n_int + singles.size();
    if (ns > 64) throw CapExceeded("cylinder_count: automaton mode limited to 64 word states");

    auto piece_image = [](const SurvivorAutomaton::Piece& p) -> std::pair<Rat, Rat> {
        if (p.hi <= Rat(1, 2)) return {2 * p.lo, 2 * p.hi};
        return {2 * p.lo - 1, 2 * p.hi - 1};
    };

    std::vector<uint64_t> succ_by_digit[2];
    succ_by_digit[0].assign(ns, 0);
    succ_by_digit[1].assign(ns, 0);
    auto state_digit = [&](size_t s) {
        return s < n_int ? a.pieces[interval_pieces[s]].digit : singles[s - n_int].digit;
    };
    for (size_t s = 0; s < n_int; ++s) {
        auto [lo, hi] = piece_image(a.pieces[interval_pieces[s]]);
        for (size_t j = 0; j < n_int; ++j) {
            const auto& q = a.pieces[interval_pieces[j]];
            if (q.lo >= lo && q.hi <= hi) succ_by_digit[q.digit][s] |= uint64_t(1) << j;
        }
        for (size_t j = 0; j < singles.size(); ++j) {
            if (lo <= singles[j].point && singles[j].point <= hi)
                succ_by_digit[singles[j].digit][s] |= uint64_t(1) << (n_int + j);
        }
    }
    for (size_t s = 0; s < singles.size(); ++s) {
        Rat t = 2 * singles[s].point - singles[s].digit;
        for (size_t j = 0; j < singles.size(); ++j) {
            if (singles[j].point == t)
                succ_by_digit[singles[j].digit][n_int + s] |= uint64_t(1) << (n_int + j);
        }
    }

    uint64_t start[2] = {0, 0};
    for (size_t s = 0; s < ns; ++s) start[state_digit(s)] |= uint64_t(1) << s;

    std::map<uint64_t, Int> layer;
    for (int d = 0; d < 2; ++d)
        if (start[d]) layer[start[d]] += 1;
    for (unsigned step = 1; step < n; ++step) {
        std::map<uint64_t, Int> next;
        for (const auto& [mask, cnt] : layer) {
            for (int d = 0; d < 2; ++d) {
                uint64_t to = 0;
                uint64_t m = mask;
                while (m) {
                    unsigned s = static_cast<unsigned>(__builtin_ctzll(m));
                    m &= m - 1;
                    to |= succ_by_digit[d][s];
                }
                if (to) next[to] += cnt;
            }
        }
        layer = std::move(next);
    }
    Int total(0);
    for (const auto& [mask, cnt] : layer) total += cnt;
    return total;
}

struct Segment {
    Rat lo, hi;  // closed, possibly degenerate
};

Int naive_count(const Rat& hole_lo, const Rat& hole_hi, std::vector<Segment> segs, unsigned n,
                unsigned depth) {
    // remove the open hole (constraint at iterate `depth`)
    if (hole_lo < hole_hi) {
        std::vector<Segment> kept;
        for (auto& s : segs) {
            if (s.hi <= hole_lo || s.lo >= hole_hi) {
                kept.push_back(s);
                continue;
            }
            if (s.lo <= hole_lo) kept.push_back({s.lo, std::min(s.hi, hole_lo)});
            if (s.hi >= hole_hi) kept.push_back({std::max(s.lo, hole_hi), s.hi});
        }
        segs = std::move(kept);
    }
    if (segs.empty()) return Int(0);
    if (depth + 1 > n) return Int(1);  // unreachable guard
    Int total(0);
    const Rat half(1, 2);
    for (int d = 0; d < 2; ++d) {
        Rat lo = d ? half : Rat(0);
        Rat hi = d ? Rat(1) : half;
        std::vector<Segment> part;
        for (const auto& s : segs) {
            Rat a = std::max(s.lo, lo), b = std::min(s.hi, hi);
            if (a <= b) part.push_back({2 * a - (d ? 1 : 0), 2 * b - (d ? 1 : 0)});
        }
        if (part.empty()) continue;
        if (depth + 1 == n)
            total += 1;
        else
            total += naive_count(hole_lo, hole_hi, std::move(part), n, depth + 1);
    }
    return total;
}

}  // namespace

Int cylinder_count(const BinaryAngle& theta, unsigned n, CountMode mode) {
    if (n == 0) throw std::invalid_argument("cylinder_count: n must be positive");
    if (mode == CountMode::Automaton) {
        if (n > 64) throw CapExceeded("cylinder_count: n exceeds the automaton-mode cap");
        return automaton_count(build_automaton(theta), n);
    }
    if (n > 24) throw CapExceeded("cylinder_count: n exceeds the naive-mode cap");
    const Rat& t = theta.value();
    if (!(Rat(0) < t && t <= Rat(1, 2)))
        throw std::invalid_argument("cylinder_count: requires theta in (0, 1/2]");
    Rat hole_lo = t, hole_hi = 1 - t;
    return naive_count(hole_lo, hole_hi, {{Rat(0), Rat(1)}}, n, 0);
}

std::string dump_automaton(const SurvivorAutomaton& a) {
    std::ostringstream os;
    os << "hole (" << a.hole_lo << ", " << a.hole_hi << ")";
    if (a.from_first_iterate) os << " [k>=1 variant]";
    os << "\nstates " << a.state_count() << "  lambda [" << a.lambda_lo << ", " << a.lambda_hi
       << "]\n";
    for (size_t s = 0; s < a.state_count(); ++s) {
        const auto& p = a.pieces[a.states[s]];
        os << s << ": [" << p.lo << ", " << p.hi << "]";
        if (p.in_hole) os << " (hole)";
        os << " ->";
        for (uint32_t j : a.edges[s]) os << ' ' << j;
        os << '\n';
    }
    return os.str();
}

}  // namespace kneading
