#include "kneading/angle.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace kneading {

namespace {

const Rat kHalf(1, 2);

bool rat_is_dyadic(const Rat& v) {
    Int den = v.get_den();
    // den is a power of two iff den & (den-1) == 0
    Int m = den - 1;
    mpz_and(m.get_mpz_t(), m.get_mpz_t(), den.get_mpz_t());
    return sgn(m) == 0;
}

}  // namespace

Int block_value(const std::vector<uint8_t>& block) {
    Int v(0);
    for (uint8_t b : block) {
        v <<= 1;
        if (b) v += 1;
    }
    return v;
}

std::vector<uint8_t> complement(std::vector<uint8_t> block) {
    for (auto& b : block) b = b ? 0 : 1;
    return block;
}

BinaryAngle BinaryAngle::from_fraction(const Int& num, const Int& den) {
    if (sgn(den) == 0) throw std::invalid_argument("angle: zero denominator");
    Rat v(num, den);
    v.canonicalize();
    return from_fraction(v);
}

BinaryAngle BinaryAngle::from_fraction(const Rat& v_in) {
    Rat v = v_in;
    v.canonicalize();
    if (v < 0 || v > 1) throw std::invalid_argument("angle: value outside [0,1]");
    if (sgn(v) == 0) return BinaryAngle(Rat(0), {}, {0});
    if (v == 1) return BinaryAngle(Rat(1), {}, {1});
    if (v == kHalf) return BinaryAngle(kHalf, {0}, {1});

    if (rat_is_dyadic(v)) {
        // terminating expansion: p/2^k with p odd -> digits of p padded to k bits
        const Int& p = v.get_num();
        size_t k = mpz_sizeinbase(v.get_den().get_mpz_t(), 2) - 1;
        std::vector<uint8_t> pre(k);
        for (size_t i = 0; i < k; ++i)
            pre[k - 1 - i] = mpz_tstbit(p.get_mpz_t(), i) ? 1 : 0;
        return BinaryAngle(v, std::move(pre), {0});
    }

    // base-2 long division with remainder tracking; the remainder cycle gives
    // the minimal preperiod and primitive period directly.
    std::map<Rat, size_t> seen;
    std::vector<uint8_t> digits;
    Rat r = v;
    size_t cycle_start = 0;
    for (;;) {
        auto it = seen.find(r);
        if (it != seen.end()) {
            cycle_start = it->second;
            break;
        }
        seen.emplace(r, digits.size());
        r *= 2;
        if (r >= 1) {
            digits.push_back(1);
            r -= 1;
        } else {
            digits.push_back(0);
        }
    }
    std::vector<uint8_t> pre(digits.begin(), digits.begin() + cycle_start);
    std::vector<uint8_t> per(digits.begin() + cycle_start, digits.end());
    return BinaryAngle(v, std::move(pre), std::move(per));
}

BinaryAngle BinaryAngle::from_periodic(const std::vector<uint8_t>& block) {
    return from_digits({}, block);
}

BinaryAngle BinaryAngle::from_digits(const std::vector<uint8_t>& pre,
                                     const std::vector<uint8_t>& block) {
    for (uint8_t b : pre)
        if (b > 1) throw std::invalid_argument("angle: digits must be 0/1");
    for (uint8_t b : block)
        if (b > 1) throw std::invalid_argument("angle: digits must be 0/1");
    if (block.empty() && pre.empty()) throw std::invalid_argument("angle: empty expansion");
    // value = pre/2^a + per/(2^a (2^P - 1)); terminating inputs use per = 0s
    size_t a = pre.size();
    Rat v(block_value(pre));
    if (a) mpq_div_2exp(v.get_mpq_t(), v.get_mpq_t(), a);
    if (!block.empty()) {
        Int denom = (Int(1) << block.size()) - 1;
        Rat tail(block_value(block), denom);
        tail.canonicalize();
        if (a) mpq_div_2exp(tail.get_mpq_t(), tail.get_mpq_t(), a);
        v += tail;
    }
    return from_fraction(v);  // normalizes to canonical form
}

BinaryAngle BinaryAngle::parse(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("angle parse: empty string");
    if (s == "0") return from_fraction(Int(0), Int(1));
    if (s == "1") return from_fraction(Int(1), Int(1));
    auto slash = s.find('/');
    if (slash != std::string_view::npos) {
        std::string num(s.substr(0, slash)), den(s.substr(slash + 1));
        if (num.empty() || den.empty() || num.find('.') != std::string::npos ||
            den.find('.') != std::string::npos)
            throw std::invalid_argument("angle parse: malformed fraction");
        Int n, d;
        if (mpz_set_str(n.get_mpz_t(), num.c_str(), 10) != 0 ||
            mpz_set_str(d.get_mpz_t(), den.c_str(), 10) != 0)
            throw std::invalid_argument("angle parse: malformed fraction");
        return from_fraction(n, d);
    }
    if (s[0] == '.') {
        std::vector<uint8_t> pre, per;
        bool in_paren = false, closed = false;
        for (size_t i = 1; i < s.size(); ++i) {
            char c = s[i];
            if (c == '(') {
                if (in_paren || closed) throw std::invalid_argument("angle parse: bad '('");
                in_paren = true;
            } else if (c == ')') {
                if (!in_paren) throw std::invalid_argument("angle parse: bad ')'");
                in_paren = false;
                closed = true;
            } else if (c == '0' || c == '1') {
                if (closed) throw std::invalid_argument("angle parse: digits after ')'");
                (in_paren ? per : pre).push_back(c == '1' ? 1 : 0);
            } else {
                throw std::invalid_argument("angle parse: binary expansions use digits 0/1");
            }
        }
        if (in_paren) throw std::invalid_argument("angle parse: unterminated '('");
        if (pre.empty() && per.empty()) throw std::invalid_argument("angle parse: no digits");
        return from_digits(pre, per);
    }
    throw std::invalid_argument("angle parse: expected \"p/q\" or \".bits(period)\"");
}

int BinaryAngle::digit(size_t k) const {
    if (k == 0) throw std::invalid_argument("digit index is 1-based");
    if (k <= pre_.size()) return pre_[k - 1];
    return period_[(k - 1 - pre_.size()) % period_.size()];
}

bool BinaryAngle::is_dyadic() const { return rat_is_dyadic(value_); }

BinaryAngle BinaryAngle::rotated_once() const {
    Rat v = value_ * 2;
    if (v >= 1) v -= 1;
    std::vector<uint8_t> pre, per;
    if (!pre_.empty()) {
        pre.assign(pre_.begin() + 1, pre_.end());
        per = period_;
    } else {
        per.assign(period_.begin() + 1, period_.end());
        per.push_back(period_.front());
    }
    // wrap points where the shifted view is not canonical
    if (v == kHalf) return BinaryAngle(kHalf, {0}, {1});
    if (pre.empty() && per == std::vector<uint8_t>{1}) return BinaryAngle(Rat(0), {}, {0});
    return BinaryAngle(std::move(v), std::move(pre), std::move(per));
}

BinaryAngle BinaryAngle::doubled() const { return rotated_once(); }

std::vector<BinaryAngle> BinaryAngle::orbit() const {
    std::vector<BinaryAngle> out;
    out.reserve(expansion_length());
    out.push_back(*this);
    for (size_t i = 1; i < expansion_length(); ++i) out.push_back(out.back().rotated_once());
    return out;
}

std::string BinaryAngle::to_string() const {
    std::string s = ".";
    for (uint8_t b : pre_) s += b ? '1' : '0';
    s += '(';
    for (uint8_t b : period_) s += b ? '1' : '0';
    s += ')';
    return s;
}

std::string BinaryAngle::fraction_string() const {
    std::ostringstream os;
    os << value_.get_num() << '/' << value_.get_den();
    return os.str();
}

size_t agreement_depth(const BinaryAngle& x, const BinaryAngle& y) {
    if (x == y) throw std::invalid_argument("agreement_depth: angles are equal");
    // two distinct canonical expansions must differ within one period
    // alignment of each other
    size_t bound = std::max(x.preperiod_length(), y.preperiod_length()) +
                   x.period_length() * y.period_length() + 2;
    for (size_t k = 1; k <= bound; ++k) {
        if (x.digit(k) != y.digit(k)) return k;
    }
    throw std::logic_error("agreement_depth: expansions failed to separate");
}

DistanceBounds distance_bounds_check(const BinaryAngle& x, const BinaryAngle& y) {
    if (!(Rat(0) < y.value() && y.value() < x.value() && x.value() <= Rat(1, 2)))
        throw std::invalid_argument("distance_bounds_check: requires 0 < y < x <= 1/2");
    DistanceBounds out;
    out.n = agreement_depth(x, y);
    Rat c = (x.value() == Rat(1, 2)) ? Rat(1) : Rat(2) * (1 - 2 * x.value());
    out.lower = c * pow2(-static_cast<long>(out.n));
    out.upper = pow2(-static_cast<long>(out.n) + 1);
    Rat diff = x.value() - y.value();
    out.holds = (out.lower <= diff) && (diff <= out.upper);
    return out;
}

}  // namespace kneading
