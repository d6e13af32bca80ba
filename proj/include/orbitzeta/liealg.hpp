#pragma once

// Lie rings over Z_p given by integer structure constants: validation
// (antisymmetry, Jacobi), uniformity and perfectness analysis, and the
// structural maps ad and Psi.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orbitzeta/arith.hpp"
#include "orbitzeta/errors.hpp"
#include "orbitzeta/matnf.hpp"

namespace orbitzeta {

struct StructureReport {
    Val uniformity;            // largest u with [L,L] contained in p^u L
    bool perfect = false;      // bracket span open, i.e. full rank
    std::optional<long> m_l;   // min k with p^k L contained in [L,L]; empty if not perfect
};

struct BracketEntry {
    long i = 0, j = 0;         // basis indices, i < j
    std::vector<Int> c;        // coordinates of [e_i, e_j]
};

class LieAlgebra {
public:
    // Validates antisymmetry and the Jacobi identity exactly over Z, then
    // derives the structure report.
    static LieAlgebra validate(PrimeContext ctx, long n, std::vector<Int> c,
                               std::string name = "") {
        if (n < 1 || static_cast<long>(c.size()) != n * n * n)
            throw spec_error(errc::invalid_algebra, "structure tensor has wrong shape");
        LieAlgebra L(std::move(ctx), n, std::move(c), std::move(name));
        L.check_antisymmetry();
        L.check_jacobi();
        L.analyze();
        return L;
    }

    static LieAlgebra from_brackets(PrimeContext ctx, long n,
                                    const std::vector<BracketEntry>& brackets,
                                    std::string name = "") {
        std::vector<Int> c(static_cast<std::size_t>(n * n * n), Int(0));
        for (const auto& b : brackets) {
            if (b.i < 0 || b.j < 0 || b.i >= n || b.j >= n)
                throw spec_error(errc::invalid_algebra, "bracket index out of range");
            if (b.i >= b.j)
                throw spec_error(errc::invalid_algebra, "brackets must be given with i < j");
            if (static_cast<long>(b.c.size()) != n)
                throw spec_error(errc::invalid_algebra, "bracket vector has wrong length");
            for (long s = 0; s < n; ++s) {
                c[idx(n, b.i, b.j, s)] = b.c[static_cast<std::size_t>(s)];
                c[idx(n, b.j, b.i, s)] = -b.c[static_cast<std::size_t>(s)];
            }
        }
        return validate(std::move(ctx), n, std::move(c), std::move(name));
    }

    const PrimeContext& ctx() const { return ctx_; }
    long p() const { return ctx_.p; }
    long rank() const { return n_; }
    const std::string& name() const { return name_; }
    const StructureReport& structure() const { return report_; }

    bool is_uniform() const { return report_.uniformity >= Val::finite(1); }
    long uniformity_floor() const {
        // min(u, 62): a finite handle on u for valuation bookkeeping.
        return report_.uniformity.is_infinite() ? 62 : report_.uniformity.value();
    }

    const Int& c(long i, long j, long s) const { return c_[idx(n_, i, j, s)]; }

    std::vector<Int> bracket(const std::vector<Int>& x, const std::vector<Int>& y) const {
        std::vector<Int> r(static_cast<std::size_t>(n_), Int(0));
        for (long i = 0; i < n_; ++i) {
            if (x[static_cast<std::size_t>(i)] == 0) continue;
            for (long j = 0; j < n_; ++j) {
                if (y[static_cast<std::size_t>(j)] == 0 || i == j) continue;
                Int xy = x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)];
                for (long s = 0; s < n_; ++s)
                    if (c(i, j, s) != 0) r[static_cast<std::size_t>(s)] += xy * c(i, j, s);
            }
        }
        return r;
    }

    // Matrix of ad x: column j holds the coordinates of [x, e_j].
    IntMatrix ad_matrix(const std::vector<Int>& x) const {
        IntMatrix m(n_, n_);
        for (long i = 0; i < n_; ++i) {
            if (x[static_cast<std::size_t>(i)] == 0) continue;
            for (long j = 0; j < n_; ++j)
                for (long s = 0; s < n_; ++s)
                    if (c(i, j, s) != 0) m.at(s, j) += x[static_cast<std::size_t>(i)] * c(i, j, s);
        }
        return m;
    }

    // Matrix of the alternating form B_a(l, k) = a([l, k]); entry (i, j) is
    // a([e_i, e_j]).  The same matrix represents Psi(a) in Hom(L, L*).
    IntMatrix psi_matrix(const std::vector<Int>& a) const {
        IntMatrix m(n_, n_);
        for (long i = 0; i < n_; ++i)
            for (long j = 0; j < n_; ++j)
                for (long s = 0; s < n_; ++s)
                    if (c(i, j, s) != 0) m.at(i, j) += a[static_cast<std::size_t>(s)] * c(i, j, s);
        return m;
    }

    // n x n(n-1)/2 matrix whose columns are the bracket vectors [e_i, e_j], i < j.
    IntMatrix bracket_span_matrix() const {
        long cols = n_ * (n_ - 1) / 2;
        IntMatrix m(n_, std::max(cols, 1L));
        long col = 0;
        for (long i = 0; i < n_; ++i)
            for (long j = i + 1; j < n_; ++j, ++col)
                for (long s = 0; s < n_; ++s) m.at(s, col) = c(i, j, s);
        return m;
    }

    std::vector<Int> basis_vector(long i) const {
        std::vector<Int> v(static_cast<std::size_t>(n_), Int(0));
        v[static_cast<std::size_t>(i)] = 1;
        return v;
    }

private:
    LieAlgebra(PrimeContext ctx, long n, std::vector<Int> c, std::string name)
        : ctx_(std::move(ctx)), n_(n), c_(std::move(c)), name_(std::move(name)) {}

    static std::size_t idx(long n, long i, long j, long s) {
        return static_cast<std::size_t>((i * n + j) * n + s);
    }

    void check_antisymmetry() const {
        for (long i = 0; i < n_; ++i)
            for (long j = i; j < n_; ++j)
                for (long s = 0; s < n_; ++s)
                    if (c(i, j, s) + c(j, i, s) != 0)
                        throw spec_error(errc::invalid_algebra,
                                         "antisymmetry violated at [e_" + std::to_string(i) +
                                             ", e_" + std::to_string(j) + "]");
    }

    void check_jacobi() const {
        for (long i = 0; i < n_; ++i)
            for (long j = i + 1; j < n_; ++j)
                for (long k = j + 1; k < n_; ++k) {
                    std::vector<Int> sum(static_cast<std::size_t>(n_), Int(0));
                    accumulate_double_bracket(sum, i, j, k);
                    accumulate_double_bracket(sum, j, k, i);
                    accumulate_double_bracket(sum, k, i, j);
                    for (const Int& x : sum)
                        if (x != 0)
                            throw spec_error(errc::invalid_algebra,
                                             "Jacobi identity violated at (e_" +
                                                 std::to_string(i) + ", e_" + std::to_string(j) +
                                                 ", e_" + std::to_string(k) + ")");
                }
    }

    // sum += [e_i, [e_j, e_k]]
    void accumulate_double_bracket(std::vector<Int>& sum, long i, long j, long k) const {
        for (long s = 0; s < n_; ++s) {
            const Int& inner = c(j, k, s);
            if (inner == 0 || s == i) continue;
            for (long t = 0; t < n_; ++t)
                if (c(i, s, t) != 0) sum[static_cast<std::size_t>(t)] += inner * c(i, s, t);
        }
    }

    void analyze() {
        Val u = Val::infinity();
        for (long i = 0; i < n_; ++i)
            for (long j = i + 1; j < n_; ++j)
                for (long s = 0; s < n_; ++s)
                    u = min(u, padic_valuation(c(i, j, s), ctx_.p));
        report_.uniformity = u;

        auto divs = elementary_divisor_valuations(bracket_span_matrix(), ctx_.p);
        bool full_rank = static_cast<long>(divs.size()) >= n_;
        for (long i = 0; i < n_ && full_rank; ++i)
            if (divs[static_cast<std::size_t>(i)].is_infinite()) full_rank = false;
        report_.perfect = full_rank;
        if (full_rank) report_.m_l = divs[static_cast<std::size_t>(n_ - 1)].value();
    }

    PrimeContext ctx_;
    long n_;
    std::vector<Int> c_;
    std::string name_;
    StructureReport report_;
};

} // namespace orbitzeta
