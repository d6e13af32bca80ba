#pragma once

// Integer matrix normal-form data over Z_p: minor valuation profiles h_i,
// elementary divisor valuations, and the subgroup-index exponent they induce.

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "orbitzeta/arith.hpp"
#include "orbitzeta/errors.hpp"

namespace orbitzeta {

struct IntMatrix {
    long rows = 0, cols = 0;
    std::vector<Int> a;

    IntMatrix() = default;
    IntMatrix(long r, long c) : rows(r), cols(c), a(static_cast<std::size_t>(r * c), Int(0)) {}

    Int& at(long i, long j) { return a[static_cast<std::size_t>(i * cols + j)]; }
    const Int& at(long i, long j) const { return a[static_cast<std::size_t>(i * cols + j)]; }

    static IntMatrix identity(long n) {
        IntMatrix m(n, n);
        for (long i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    IntMatrix transposed() const {
        IntMatrix t(cols, rows);
        for (long i = 0; i < rows; ++i)
            for (long j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
        if (x.cols != y.rows) internal_check_failed("matrix product shape mismatch");
        IntMatrix r(x.rows, y.cols);
        for (long i = 0; i < x.rows; ++i)
            for (long k = 0; k < x.cols; ++k) {
                if (x.at(i, k) == 0) continue;
                for (long j = 0; j < y.cols; ++j) r.at(i, j) += x.at(i, k) * y.at(k, j);
            }
        return r;
    }

    std::vector<Int> apply(const std::vector<Int>& v) const {
        if (static_cast<long>(v.size()) != cols) internal_check_failed("matrix apply shape mismatch");
        std::vector<Int> r(static_cast<std::size_t>(rows), Int(0));
        for (long i = 0; i < rows; ++i)
            for (long j = 0; j < cols; ++j)
                if (at(i, j) != 0 && v[static_cast<std::size_t>(j)] != 0)
                    r[static_cast<std::size_t>(i)] += at(i, j) * v[static_cast<std::size_t>(j)];
        return r;
    }

    void mod_reduce(const Int& q) {
        for (auto& x : a) {
            x %= q;
            if (x < 0) x += q;
        }
    }

    friend bool operator==(const IntMatrix& x, const IntMatrix& y) {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }
};

// Valuations of the elementary divisors s_1 | s_2 | ... of a (possibly
// rectangular) integer matrix, via exact row/column reduction with p-adic
// pivoting.  Unit row scalings keep everything in Z; they do not change the
// divisors over Z_p.
inline std::vector<Val> elementary_divisor_valuations(IntMatrix m, long p) {
    long k = std::min(m.rows, m.cols);
    std::vector<Val> vals;
    vals.reserve(static_cast<std::size_t>(k));
    for (long t = 0; t < k; ++t) {
        Val best = Val::infinity();
        long bi = -1, bj = -1;
        for (long i = t; i < m.rows; ++i)
            for (long j = t; j < m.cols; ++j) {
                Val v = padic_valuation(m.at(i, j), p);
                if (v < best) {
                    best = v;
                    bi = i;
                    bj = j;
                }
            }
        if (best.is_infinite()) break;
        if (bi != t)
            for (long j = 0; j < m.cols; ++j) std::swap(m.at(t, j), m.at(bi, j));
        if (bj != t)
            for (long i = 0; i < m.rows; ++i) std::swap(m.at(i, t), m.at(i, bj));

        long d = best.value();
        Int pd = int_pow(p, d);
        Int pivot_unit = m.at(t, t) / pd;
        for (long i = t + 1; i < m.rows; ++i) {
            if (m.at(i, t) == 0) continue;
            long e = padic_valuation(m.at(i, t), p).value();
            Int bu = m.at(i, t) / int_pow(p, e);
            Int shift = int_pow(p, e - d);
            for (long j = t; j < m.cols; ++j)
                m.at(i, j) = pivot_unit * m.at(i, j) - bu * shift * m.at(t, j);
        }
        for (long j = t + 1; j < m.cols; ++j) {
            if (m.at(t, j) == 0) continue;
            long e = padic_valuation(m.at(t, j), p).value();
            Int bu = m.at(t, j) / int_pow(p, e);
            Int shift = int_pow(p, e - d);
            for (long i = t; i < m.rows; ++i)
                m.at(i, j) = pivot_unit * m.at(i, j) - bu * shift * m.at(i, t);
        }
        vals.push_back(Val::finite(d));
    }
    while (static_cast<long>(vals.size()) < k) vals.push_back(Val::infinity());
    return vals;
}

inline constexpr long kMaxMinorEnumerationDim = 8;

// hVals[i] = min over all i x i minors (independent row/column subsets) of
// v_p(det); hVals[0] = 0.  Minors are computed by Laplace expansion memoized
// over (row set, column set) pairs; n <= 8 keeps the subset space small.
inline std::vector<Val> minor_valuation_profile(const IntMatrix& A, long p) {
    if (A.rows != A.cols) internal_check_failed("minor profile needs a square matrix");
    long n = A.rows;
    if (n > kMaxMinorEnumerationDim)
        throw spec_error(errc::resource_cap, "minor enumeration limited to dimension 8");

    std::vector<Val> h(static_cast<std::size_t>(n + 1), Val::infinity());
    h[0] = Val::finite(0);

    // dets keyed by (rmask << 8) | cmask; level i holds all |R| = |C| = i.
    std::unordered_map<std::uint32_t, Int> prev, cur;
    prev.emplace(0u, Int(1));

    std::vector<std::uint32_t> masks_by_size[kMaxMinorEnumerationDim + 1];
    for (std::uint32_t m = 0; m < (1u << n); ++m)
        masks_by_size[__builtin_popcount(m)].push_back(m);

    for (long i = 1; i <= n; ++i) {
        cur.clear();
        for (std::uint32_t rmask : masks_by_size[i]) {
            long rlast = 31 - __builtin_clz(rmask);
            std::uint32_t rrest = rmask & ~(1u << rlast);
            for (std::uint32_t cmask : masks_by_size[i]) {
                Int det = 0;
                long t = 0;
                for (long c = 0; c < n; ++c) {
                    if (!(cmask & (1u << c))) continue;
                    const Int& entry = A.at(rlast, c);
                    if (entry != 0) {
                        const Int& sub = prev.at((rrest << 8) | (cmask & ~(1u << c)));
                        if (((i - 1) + t) % 2 == 0)
                            det += entry * sub;
                        else
                            det -= entry * sub;
                    }
                    ++t;
                }
                cur.emplace((rmask << 8) | cmask, det);
                h[static_cast<std::size_t>(i)] =
                    min(h[static_cast<std::size_t>(i)], padic_valuation(det, p));
            }
        }
        std::swap(prev, cur);
    }
    return h;
}

// d_i = h_i - h_(i-1); infinite h_i propagate as infinite divisors.
inline std::vector<Val> divisors_from_minor_ratios(const std::vector<Val>& h) {
    if (h.empty() || h[0] != Val::finite(0))
        internal_check_failed("minor profile must start at h_0 = 0");
    std::vector<Val> d;
    d.reserve(h.size() - 1);
    for (std::size_t i = 1; i < h.size(); ++i) {
        if (h[i].is_infinite()) {
            if (i + 1 < h.size() && !h[i + 1].is_infinite())
                internal_check_failed("finite minor after a vanishing level");
            d.push_back(Val::infinity());
        } else {
            d.push_back(h[i] - h[i - 1]);
        }
    }
    return d;
}

// Valuations of the h_i and of the elementary divisors of one matrix,
// stored together; d must be nondecreasing.
struct DivisorProfile {
    std::vector<Val> h;  // size n + 1, h[0] = 0
    std::vector<Val> d;  // size n

    long dim() const { return static_cast<long>(d.size()); }

    static DivisorProfile from_h(std::vector<Val> h_in) {
        DivisorProfile pr;
        pr.d = divisors_from_minor_ratios(h_in);
        pr.h = std::move(h_in);
        pr.check();
        return pr;
    }

    static DivisorProfile from_d(const std::vector<Val>& d_in) {
        DivisorProfile pr;
        pr.d = d_in;
        pr.h.assign(d_in.size() + 1, Val::finite(0));
        for (std::size_t i = 0; i < d_in.size(); ++i) pr.h[i + 1] = pr.h[i] + d_in[i];
        pr.check();
        return pr;
    }

    void check() const {
        for (std::size_t i = 1; i < d.size(); ++i)
            if (d[i] < d[i - 1])
                internal_check_failed("elementary divisor valuations not nondecreasing");
    }
};

inline DivisorProfile divisor_profile(const IntMatrix& A, long p) {
    if (A.rows == A.cols && A.rows <= kMaxMinorEnumerationDim)
        return DivisorProfile::from_h(minor_valuation_profile(A, p));
    return DivisorProfile::from_d(elementary_divisor_valuations(A, p));
}

// log_p |M1 : phi^(-1)(z M2)| for phi with the given divisor profile and
// v_p(z) = z_val.  Derived two ways and cross-asserted: the three-case cone
// formula k*z_val - h_k, and sum_i max(z_val - d_i, 0).
inline long quotient_index_exponent(const DivisorProfile& pr, long z_val) {
    if (z_val < 0) internal_check_failed("negative z valuation");
    pr.check();

    long cone = 0;
    while (cone < pr.dim() && pr.d[static_cast<std::size_t>(cone)].leq(z_val)) ++cone;
    if (cone > 0 && pr.h[static_cast<std::size_t>(cone)].is_infinite())
        internal_check_failed("cone with vanishing minor level");
    long via_cone =
        cone == 0 ? 0 : cone * z_val - pr.h[static_cast<std::size_t>(cone)].value();

    long via_divisors = 0;
    for (const Val& dv : pr.d)
        if (dv.leq(z_val)) via_divisors += z_val - dv.value();

    if (via_cone != via_divisors)
        internal_check_failed("index exponent: cone formula " + std::to_string(via_cone) +
                              " != divisor sum " + std::to_string(via_divisors));
    return via_cone;
}

} // namespace orbitzeta
