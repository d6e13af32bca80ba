#pragma once

// Characters of (L, +) at finite level, radical indices, the coadjoint
// action of the associated uniform group, and orbit enumeration.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "orbitzeta/arith.hpp"
#include "orbitzeta/errors.hpp"
#include "orbitzeta/liealg.hpp"
#include "orbitzeta/matnf.hpp"

namespace orbitzeta {

inline Int mod_inverse(Int a, const Int& m) {
    a %= m;
    if (a < 0) a += m;
    Int r0 = m, r1 = a, t0 = 0, t1 = 1;
    while (r1 != 0) {
        Int q = r0 / r1;
        Int r2 = r0 - q * r1;
        Int t2 = t0 - q * t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if (r0 != 1) internal_check_failed("modular inverse of a non-unit");
    if (t0 < 0) t0 += m;
    return t0;
}

// A level-k character w = Phi_{p^k}(a) of (L, +), held in normalized form:
// k = 0 iff a = 0 (the trivial character), and a is primitive mod p otherwise,
// so o(w) = p^k.
struct CharacterHandle {
    const LieAlgebra* alg = nullptr;
    int level = 0;
    std::vector<Int> a;

    friend bool operator==(const CharacterHandle& x, const CharacterHandle& y) {
        return x.level == y.level && x.a == y.a;
    }
    friend bool operator<(const CharacterHandle& x, const CharacterHandle& y) {
        if (x.level != y.level) return x.level < y.level;
        return std::lexicographical_compare(x.a.begin(), x.a.end(), y.a.begin(), y.a.end());
    }
};

// Strips common p factors from a mod p^k so that the handle is primitive.
inline CharacterHandle normalize(const LieAlgebra& alg, std::vector<Int> a, int k) {
    long p = alg.p();
    if (k < 0) internal_check_failed("negative character level");
    Int q = int_pow(p, k);
    for (auto& x : a) {
        x %= q;
        if (x < 0) x += q;
    }
    Val v = Val::infinity();
    for (const auto& x : a) v = min(v, padic_valuation(x, p));
    if (v.is_infinite() || v.value() >= k)
        return CharacterHandle{&alg, 0, std::vector<Int>(a.size(), Int(0))};
    long s = v.value();
    if (s > 0) {
        Int ps = int_pow(p, s);
        for (auto& x : a) x /= ps;
        k -= static_cast<int>(s);
        Int qk = int_pow(p, k);
        for (auto& x : a) x %= qk;
    }
    return CharacterHandle{&alg, k, std::move(a)};
}

// w(l) = theta_k^<a, l>.
inline CycloValue char_value(const CharacterHandle& w, const std::vector<Int>& l) {
    Int e = 0;
    for (std::size_t i = 0; i < w.a.size(); ++i) e += w.a[i] * l[i];
    return cyclo_canonical(w.alg->ctx(), w.level, e);
}

inline DivisorProfile psi_profile(const LieAlgebra& alg, const std::vector<Int>& a) {
    return divisor_profile(alg.psi_matrix(a), alg.p());
}

// log_p |L : Rad(w)|; even because the form B_w is alternating.
inline long radical_exponent(const CharacterHandle& w) {
    if (w.level == 0) return 0;
    long e = quotient_index_exponent(psi_profile(*w.alg, w.a), w.level);
    if (e % 2 != 0)
        internal_check_failed("odd radical exponent (antisymmetry violated upstream)");
    return e;
}

// exp(ad x) reduced mod p^e.  Terms (ad x)^m / m! are exact: the numerator is
// divisible by p^(m u) >= p^(v_p(m!)) and the unit part of m! is inverted mod
// p^e.  The series is cut at the first m with m*u - floor((m-1)/(p-1)) >= e;
// every later term vanishes mod p^e.
inline IntMatrix exp_ad_matrix(const LieAlgebra& alg, const std::vector<Int>& x, int e) {
    long n = alg.rank();
    long p = alg.p();
    Int pe = int_pow(p, e);
    IntMatrix ad = alg.ad_matrix(x);
    IntMatrix sum = IntMatrix::identity(n);
    bool ad_zero = std::all_of(ad.a.begin(), ad.a.end(), [](const Int& v) { return v == 0; });
    if (ad_zero) return sum;
    if (!alg.is_uniform())
        throw spec_error(errc::hypothesis_violation,
                         "exp(ad x) needs a uniform algebra (u >= 1)");
    long u = alg.uniformity_floor();

    IntMatrix power = IntMatrix::identity(n);
    Int factorial = 1;
    for (long m = 1;; ++m) {
        if (m * u - (m - 1) / (p - 1) >= e) break;
        power = power * ad;
        factorial *= m;
        long vf = padic_valuation(factorial, p).is_infinite()
                      ? 0
                      : padic_valuation(factorial, p).value();
        Int pvf = int_pow(p, vf);
        Int unit = factorial / pvf;
        Int inv_unit = mod_inverse(unit % pe, pe);
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j) {
                const Int& num = power.at(i, j);
                if (num == 0) continue;
                if (num % pvf != 0)
                    internal_check_failed("exp(ad) term not p-integral");
                sum.at(i, j) += (num / pvf) * inv_unit;
            }
        sum.mod_reduce(pe);
    }
    sum.mod_reduce(pe);
    return sum;
}

namespace detail {

inline std::string vec_key(const std::vector<Int>& v) {
    std::string s;
    for (const auto& x : v) {
        s += x.str();
        s += ',';
    }
    return s;
}

// Dual action of the generators exp(e_j): a |-> transpose(exp(ad(-e_j))) a.
inline std::vector<IntMatrix> coadjoint_generator_matrices(const LieAlgebra& alg, int k) {
    std::vector<IntMatrix> gens;
    Int pk = int_pow(alg.p(), k);
    for (long j = 0; j < alg.rank(); ++j) {
        std::vector<Int> mej(static_cast<std::size_t>(alg.rank()), Int(0));
        mej[static_cast<std::size_t>(j)] = -1;
        IntMatrix g = exp_ad_matrix(alg, mej, k).transposed();
        g.mod_reduce(pk);
        gens.push_back(std::move(g));
    }
    return gens;
}

inline std::vector<std::vector<Int>> orbit_closure(const LieAlgebra& alg, int k,
                                                   const std::vector<Int>& start,
                                                   const std::vector<IntMatrix>& gens,
                                                   std::uint64_t cap) {
    Int pk = int_pow(alg.p(), k);
    std::vector<std::vector<Int>> members;
    std::unordered_set<std::string> seen;
    std::deque<std::size_t> queue;
    members.push_back(start);
    seen.insert(vec_key(start));
    queue.push_back(0);
    while (!queue.empty()) {
        std::size_t cur = queue.front();
        queue.pop_front();
        for (const auto& g : gens) {
            std::vector<Int> next = g.apply(members[cur]);
            for (auto& x : next) {
                x %= pk;
                if (x < 0) x += pk;
            }
            if (seen.insert(vec_key(next)).second) {
                if (members.size() >= cap)
                    throw spec_error(errc::resource_cap, "orbit size exceeds cap");
                members.push_back(std::move(next));
                queue.push_back(members.size() - 1);
            }
        }
    }
    return members;
}

} // namespace detail

struct OrbitRecord {
    CharacterHandle canonical;
    Int size;
    long radical_exp = 0;
    std::vector<std::vector<Int>> members;  // a-vectors mod p^level
};

// Breadth-first closure of w under the dual action of the n generators
// exp(e_j); the closure in the finite level-k action group is the full
// N-orbit.  |orbit| = p^radical_exponent is enforced, not just observed.
inline OrbitRecord coadjoint_orbit(const CharacterHandle& w, std::uint64_t cap = 1000000) {
    const LieAlgebra& alg = *w.alg;
    if (!alg.is_uniform() && w.level > 0)
        throw spec_error(errc::hypothesis_violation, "orbits need a uniform algebra");
    OrbitRecord rec;
    rec.radical_exp = radical_exponent(w);
    if (w.level == 0) {
        rec.canonical = w;
        rec.size = 1;
        rec.members = {w.a};
        return rec;
    }
    Int expected = int_pow(alg.p(), rec.radical_exp);
    if (expected > cap) throw spec_error(errc::resource_cap, "orbit size exceeds cap");
    auto gens = detail::coadjoint_generator_matrices(alg, w.level);
    rec.members = detail::orbit_closure(alg, w.level, w.a, gens, cap);
    rec.size = static_cast<long>(rec.members.size());
    if (rec.size != expected)
        internal_check_failed("orbit size " + rec.size.str() + " != p^radical_exponent " +
                              expected.str());
    const std::vector<Int>* least = &rec.members[0];
    for (const auto& m : rec.members)
        if (std::lexicographical_compare(m.begin(), m.end(), least->begin(), least->end()))
            least = &m;
    rec.canonical = CharacterHandle{&alg, w.level, *least};
    return rec;
}

// Phi_Omega(u) = |Omega|^(-1/2) sum_w w(u), as (cyclotomic integer, denominator
// exponent i) with |Omega|^(1/2) = p^i.
struct ScaledCyclo {
    CycloValue value;
    long denom_exp = 0;

    friend bool operator==(const ScaledCyclo& x, const ScaledCyclo& y) {
        // Compare p^(-dx) vx = p^(-dy) vy by cross-scaling.
        long p = x.value.prime();
        CycloValue lhs = x.value * CycloValue::integer(p, 0, int_pow(p, y.denom_exp));
        CycloValue rhs = y.value * CycloValue::integer(p, 0, int_pow(p, x.denom_exp));
        return lhs == rhs;
    }
};

inline ScaledCyclo kirillov_character_value(const OrbitRecord& orbit,
                                            const std::vector<Int>& u) {
    const LieAlgebra& alg = *orbit.canonical.alg;
    int k = orbit.canonical.level;
    Int q = int_pow(alg.p(), k);
    std::vector<Int> counts(static_cast<std::size_t>(q), Int(0));
    for (const auto& a : orbit.members) {
        Int e = 0;
        for (std::size_t i = 0; i < a.size(); ++i) e += a[i] * u[i];
        e %= q;
        if (e < 0) e += q;
        counts[static_cast<std::size_t>(e)] += 1;
    }
    ScaledCyclo r;
    r.value = CycloValue::from_exponent_counts(alg.p(), k, std::move(counts));
    r.denom_exp = orbit.radical_exp / 2;
    return r;
}

inline void check_automorphism(const LieAlgebra& alg, const IntMatrix& t, int level,
                               std::size_t index) {
    long n = alg.rank();
    if (t.rows != n || t.cols != n)
        throw spec_error(errc::invalid_algebra,
                         "automorphism " + std::to_string(index) + " has wrong shape");
    auto divs = elementary_divisor_valuations(t, alg.p());
    for (const auto& d : divs)
        if (d != Val::finite(0))
            throw spec_error(errc::invalid_algebra, "automorphism " + std::to_string(index) +
                                                        " is not invertible mod p");
    Int pk = int_pow(alg.p(), level);
    for (long i = 0; i < n; ++i)
        for (long j = i + 1; j < n; ++j) {
            std::vector<Int> ti(static_cast<std::size_t>(n)), tj(static_cast<std::size_t>(n));
            for (long s = 0; s < n; ++s) {
                ti[static_cast<std::size_t>(s)] = t.at(s, i);
                tj[static_cast<std::size_t>(s)] = t.at(s, j);
            }
            std::vector<Int> lhs = alg.bracket(ti, tj);
            std::vector<Int> bij(static_cast<std::size_t>(n));
            for (long s = 0; s < n; ++s) bij[static_cast<std::size_t>(s)] = alg.c(i, j, s);
            std::vector<Int> rhs = t.apply(bij);
            for (long s = 0; s < n; ++s)
                if ((lhs[static_cast<std::size_t>(s)] - rhs[static_cast<std::size_t>(s)]) % pk != 0)
                    throw spec_error(errc::invalid_algebra,
                                     "matrix " + std::to_string(index) +
                                         " is not a Lie algebra automorphism mod p^k");
        }
}

// Indices t with (a o T_t) mod p^k in the orbit of w, decided by canonical
// representative comparison.
inline std::set<std::size_t> classify_orbit_by_k(const OrbitRecord& orbit,
                                                 const std::vector<IntMatrix>& autos,
                                                 std::uint64_t cap = 1000000) {
    const CharacterHandle& w = orbit.canonical;
    const LieAlgebra& alg = *w.alg;
    Int pk = int_pow(alg.p(), w.level);
    std::set<std::size_t> kept;
    for (std::size_t t = 0; t < autos.size(); ++t) {
        check_automorphism(alg, autos[t], w.level, t);
        std::vector<Int> b = autos[t].transposed().apply(w.a);
        for (auto& x : b) {
            x %= pk;
            if (x < 0) x += pk;
        }
        CharacterHandle moved{&alg, w.level, std::move(b)};
        if (w.level == 0 || coadjoint_orbit(moved, cap).canonical == w) kept.insert(t);
    }
    return kept;
}

inline std::set<std::size_t> classify_orbit_by_k(const CharacterHandle& w,
                                                 const std::vector<IntMatrix>& autos,
                                                 std::uint64_t cap = 1000000) {
    return classify_orbit_by_k(coadjoint_orbit(w, cap), autos, cap);
}

} // namespace orbitzeta
