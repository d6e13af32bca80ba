#pragma once

// Exact scalar arithmetic: p-adic valuations, the quotient function D,
// and cyclotomic integers Z[theta_m] used for character values.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "orbitzeta/errors.hpp"

namespace orbitzeta {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int int_pow(long base, long exp) {
    Int r = 1, b = base;
    for (long e = exp; e > 0; e >>= 1) {
        if (e & 1) r *= b;
        if (e > 1) b *= b;
    }
    return r;
}

// A p-adic valuation: a natural number or +infinity (the valuation of 0).
class Val {
public:
    constexpr Val() : v_(0), inf_(false) {}
    static constexpr Val finite(long v) { return Val(v, false); }
    static constexpr Val infinity() { return Val(0, true); }

    bool is_infinite() const { return inf_; }
    long value() const {
        if (inf_) internal_check_failed("value() on infinite valuation");
        return v_;
    }

    Val operator+(const Val& o) const {
        if (inf_ || o.inf_) return infinity();
        return finite(v_ + o.v_);
    }
    Val operator-(const Val& o) const {
        // Only meaningful for h-profile differences; inf - finite = inf.
        if (inf_) return infinity();
        if (o.inf_) internal_check_failed("subtracting infinite valuation");
        return finite(v_ - o.v_);
    }

    friend bool operator==(const Val& a, const Val& b) {
        return a.inf_ == b.inf_ && (a.inf_ || a.v_ == b.v_);
    }
    friend bool operator!=(const Val& a, const Val& b) { return !(a == b); }
    friend bool operator<(const Val& a, const Val& b) {
        if (a.inf_) return false;
        if (b.inf_) return true;
        return a.v_ < b.v_;
    }
    friend bool operator<=(const Val& a, const Val& b) { return a < b || a == b; }
    friend bool operator>(const Val& a, const Val& b) { return b < a; }
    friend bool operator>=(const Val& a, const Val& b) { return b <= a; }

    bool leq(long k) const { return !inf_ && v_ <= k; }
    bool lt(long k) const { return !inf_ && v_ < k; }

    friend Val min(const Val& a, const Val& b) { return a < b ? a : b; }

    std::string str() const { return inf_ ? "inf" : std::to_string(v_); }
    friend std::ostream& operator<<(std::ostream& os, const Val& v) { return os << v.str(); }

private:
    constexpr Val(long v, bool inf) : v_(v), inf_(inf) {}
    long v_;
    bool inf_;
};

struct PrimeContext {
    long p;     // odd prime >= 3
    int e_max;  // maximum working level for cyclotomic values

    PrimeContext(long p_, int e_max_ = 16) : p(p_), e_max(e_max_) {
        if (p < 3) throw spec_error(errc::invalid_algebra, "p must be an odd prime >= 3");
        if (e_max < 1) throw spec_error(errc::invalid_algebra, "e_max must be >= 1");
        for (long d = 2; d * d <= p; ++d)
            if (p % d == 0) throw spec_error(errc::invalid_algebra, "p must be prime");
    }
};

inline Val padic_valuation(Int x, long p) {
    if (x == 0) return Val::infinity();
    long v = 0;
    while (x % p == 0) {
        x /= p;
        ++v;
    }
    return Val::finite(v);
}

inline Val padic_valuation(const Int& x, const PrimeContext& ctx) {
    return padic_valuation(x, ctx.p);
}

// D(x, y) = x/y if |x| <= |y| and y != 0, and 0 otherwise.  The quotient is a
// p-integral rational (its reduced denominator is prime to p).
inline Rat d_function(const Int& x, const Int& y, long p) {
    if (y == 0) return Rat(0);
    if (padic_valuation(x, p) < padic_valuation(y, p)) return Rat(0);
    return Rat(x, y);
}

inline Rat d_function(const Int& x, const Int& y, const PrimeContext& ctx) {
    return d_function(x, y, ctx.p);
}

// An element of Z[theta_m], theta_m a primitive p^m-th root of unity, in the
// canonical power basis 1, theta, ..., theta^(phi-1) with phi = (p-1)p^(m-1)
// (phi = 1 at level 0, where the ring is Z itself).
class CycloValue {
public:
    CycloValue() : p_(3), level_(0), c_(1, Int(0)) {}

    static long phi(long p, int level) {
        if (level == 0) return 1;
        Int ph = (p - 1) * int_pow(p, level - 1);
        return static_cast<long>(ph);
    }

    static CycloValue zero(long p, int level) { return CycloValue(p, level); }

    static CycloValue integer(long p, int level, const Int& n) {
        CycloValue r(p, level);
        r.c_[0] = n;
        return r;
    }

    // theta_level^e, e an arbitrary integer exponent.
    static CycloValue root_power(long p, int level, const Int& e) {
        CycloValue r(p, level);
        Int q = int_pow(p, level);
        Int em = ((e % q) + q) % q;
        std::vector<Int> counts(static_cast<std::size_t>(q), Int(0));
        counts[static_cast<std::size_t>(em)] = 1;
        r.c_ = reduce_counts(p, level, std::move(counts));
        return r;
    }

    // Builds sum_e counts[e] * theta^e from a histogram of exponents mod p^level.
    static CycloValue from_exponent_counts(long p, int level, std::vector<Int> counts) {
        Int q = int_pow(p, level);
        if (static_cast<Int>(counts.size()) != q)
            internal_check_failed("exponent histogram has wrong length");
        CycloValue r(p, level);
        r.c_ = reduce_counts(p, level, std::move(counts));
        return r;
    }

    long prime() const { return p_; }
    int level() const { return level_; }
    const std::vector<Int>& coeffs() const { return c_; }

    bool is_zero() const {
        return std::all_of(c_.begin(), c_.end(), [](const Int& x) { return x == 0; });
    }
    bool is_integer() const {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }
    const Int& integer_part() const {
        if (!is_integer()) internal_check_failed("cyclotomic value is not rational");
        return c_[0];
    }

    // Embeds the value into the level-m ring (theta_level = theta_m^(p^(m-level))).
    CycloValue raised_to_level(int m) const {
        if (m < level_) internal_check_failed("cannot lower cyclotomic level");
        if (m == level_) return *this;
        Int q = int_pow(p_, m);
        Int step = int_pow(p_, m - level_);
        std::vector<Int> counts(static_cast<std::size_t>(q), Int(0));
        for (std::size_t e = 0; e < c_.size(); ++e)
            if (c_[e] != 0) counts[static_cast<std::size_t>(Int(e) * step)] += c_[e];
        CycloValue r(p_, m);
        r.c_ = reduce_counts(p_, m, std::move(counts));
        return r;
    }

    CycloValue operator-() const {
        CycloValue r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }

    friend CycloValue operator+(const CycloValue& a, const CycloValue& b) {
        auto [x, y] = align(a, b);
        for (std::size_t i = 0; i < x.c_.size(); ++i) x.c_[i] += y.c_[i];
        return x;
    }
    friend CycloValue operator-(const CycloValue& a, const CycloValue& b) {
        return a + (-b);
    }
    friend CycloValue operator*(const CycloValue& a, const CycloValue& b) {
        auto [x, y] = align(a, b);
        Int q = int_pow(x.p_, x.level_);
        std::size_t qn = static_cast<std::size_t>(q);
        std::vector<Int> counts(qn, Int(0));
        for (std::size_t i = 0; i < x.c_.size(); ++i) {
            if (x.c_[i] == 0) continue;
            for (std::size_t j = 0; j < y.c_.size(); ++j) {
                if (y.c_[j] == 0) continue;
                std::size_t e = i + j;
                if (e >= qn) e -= qn;
                counts[e] += x.c_[i] * y.c_[j];
            }
        }
        CycloValue r(x.p_, x.level_);
        r.c_ = reduce_counts(x.p_, x.level_, std::move(counts));
        return r;
    }

    // Complex conjugation theta -> theta^(-1); a ring involution fixing Z.
    CycloValue conjugate() const {
        Int q = int_pow(p_, level_);
        std::size_t qn = static_cast<std::size_t>(q);
        std::vector<Int> counts(qn, Int(0));
        for (std::size_t e = 0; e < c_.size(); ++e)
            if (c_[e] != 0) counts[e == 0 ? 0 : qn - e] += c_[e];
        CycloValue r(p_, level_);
        r.c_ = reduce_counts(p_, level_, std::move(counts));
        return r;
    }

    friend bool operator==(const CycloValue& a, const CycloValue& b) {
        if (a.p_ != b.p_) return false;
        auto [x, y] = align(a, b);
        return x.c_ == y.c_;
    }
    friend bool operator!=(const CycloValue& a, const CycloValue& b) { return !(a == b); }

    std::string str() const {
        std::string s;
        bool first = true;
        for (std::size_t e = 0; e < c_.size(); ++e) {
            if (c_[e] == 0) continue;
            if (!first) s += " + ";
            s += c_[e].str();
            if (e > 0) s += "*th^" + std::to_string(e);
            first = false;
        }
        return first ? "0" : s;
    }

private:
    CycloValue(long p, int level)
        : p_(p), level_(level), c_(static_cast<std::size_t>(phi(p, level)), Int(0)) {}

    // Reduces a histogram over exponents mod p^m to the canonical power basis,
    // using theta^((p-1)p^(m-1) + r) = -(sum_j theta^(j p^(m-1) + r)).
    static std::vector<Int> reduce_counts(long p, int m, std::vector<Int> counts) {
        if (m == 0) return counts;
        long ph = phi(p, m);
        Int pm1 = int_pow(p, m - 1);
        std::size_t step = static_cast<std::size_t>(pm1);
        for (std::size_t e = counts.size(); e-- > static_cast<std::size_t>(ph);) {
            if (counts[e] == 0) continue;
            Int c = counts[e];
            counts[e] = 0;
            std::size_t base = e - static_cast<std::size_t>(ph);
            for (long j = 0; j <= p - 2; ++j) counts[base + j * step] -= c;
        }
        counts.resize(static_cast<std::size_t>(ph));
        return counts;
    }

    static std::pair<CycloValue, CycloValue> align(const CycloValue& a, const CycloValue& b) {
        if (a.p_ != b.p_) internal_check_failed("mixing cyclotomic values over different primes");
        int m = std::max(a.level_, b.level_);
        return {a.raised_to_level(m), b.raised_to_level(m)};
    }

    long p_;
    int level_;
    std::vector<Int> c_;
};

// theta_m^e as a canonical value, guarded by the working-level cap.
inline CycloValue cyclo_canonical(const PrimeContext& ctx, int level, const Int& exponent) {
    if (level > ctx.e_max)
        throw spec_error(errc::resource_cap, "cyclotomic level exceeds e_max");
    if (level < 0) internal_check_failed("negative cyclotomic level");
    return CycloValue::root_power(ctx.p, level, exponent);
}

// Sum of theta_m^(u c) over all u in (Z/p^m)^*.  Three cases by v_p(c):
// (p-1)p^(m-1) when p^m | c, -p^(m-1) when v_p(c) = m-1, and 0 below that.
inline Int galois_orbit_sum(int m, const Int& c, const PrimeContext& ctx) {
    if (m < 1) internal_check_failed("galois_orbit_sum needs level >= 1");
    Int q = int_pow(ctx.p, m);
    Int cm = ((c % q) + q) % q;
    if (cm == 0) return (ctx.p - 1) * int_pow(ctx.p, m - 1);
    Val v = padic_valuation(cm, ctx.p);
    if (v == Val::finite(m - 1)) return -int_pow(ctx.p, m - 1);
    return 0;
}

} // namespace orbitzeta
