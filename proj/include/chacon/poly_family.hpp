#pragma once

#include <map>
#include <mutex>
#include <stdexcept>

#include "chacon/rational.hpp"
#include "chacon/sparse_poly.hpp"
#include "chacon/triangle.hpp"

namespace chacon {

// Memoized family of the generating polynomials of the Birkhoff-sum
// distributions over the base-p adding map, for the classic table
// omega(j) = j.  Writing T = triangle(p-2), the family satisfies
//
//   F(0) = 1,   F(1) = (1/(p-1)) * (1 + t + ... + t^{p-2}),
//   F(p*m)     = t^{m*T} * F(m),
//   F(p*m + k) = (1/p) * t^{m*T + triangle(k-1)} * (sum_{j<p-k} t^{jk}) * F(m)
//              + (1/p) * t^{m*T + triangle(k-2)} * (sum_{j<k} t^{j(p-k)}) * F(m+1)
//
// for 0 < k < p.  Every entry is an exact probability distribution:
// coefficients are nonnegative and sum to 1 (checked on construction).
class PolyFamily {
public:
    explicit PolyFamily(int p) : p_(p) {
        if (p < 3) throw std::invalid_argument("PolyFamily: p must be >= 3");
    }

    int p() const { return p_; }

    // References stay valid for the lifetime of the family.
    const SparsePoly& poly(long long m) const {
        if (m < 0) throw std::domain_error("PolyFamily: m must be nonnegative");
        std::lock_guard<std::mutex> lock(mutex_);
        return poly_locked(m);
    }

    // t^{-mid} * poly(m) on the doubled-exponent grid: stored exponent
    // 2e - (p-2)m for each exponent e of poly(m).  deg + lowdeg = 0 in
    // stored units.
    SparsePoly symmetric(long long m) const {
        const SparsePoly& f = poly(m);
        const long long twice_mid = static_cast<long long>(p_ - 2) * m;
        SparsePoly r;
        for (const auto& [e, c] : f.terms()) r.add_term(2 * e - twice_mid, c);
        return r;
    }

private:
    int p_;
    mutable std::mutex mutex_;
    mutable std::map<long long, SparsePoly> memo_;

    const SparsePoly& poly_locked(long long m) const {
        auto it = memo_.find(m);
        if (it != memo_.end()) return it->second;

        SparsePoly val;
        if (m == 0) {
            val = SparsePoly::constant(BigRational(1));
        } else if (m == 1) {
            val = scale_shift(geometric_sum(1, p_ - 1), BigRational(1, p_ - 1), 0);
        } else {
            const long long q = m / p_;
            const int k = static_cast<int>(m % p_);
            const long long base = q * triangle(p_ - 2);
            if (k == 0) {
                val = scale_shift(poly_locked(q), BigRational(1), base);
            } else {
                const SparsePoly& a = poly_locked(q);
                const SparsePoly& b = poly_locked(q + 1);
                val = scale_shift(geometric_sum(k, p_ - k) * a, BigRational(1, p_), base + triangle(k - 1)) +
                      scale_shift(geometric_sum(p_ - k, k) * b, BigRational(1, p_), base + triangle(k - 2));
            }
        }

        if (val.coefficient_sum() != BigRational(1))
            throw std::logic_error("PolyFamily: coefficients do not sum to 1");
        for (const auto& [e, c] : val.terms())
            if (c.is_negative()) throw std::logic_error("PolyFamily: negative coefficient");

        return memo_.emplace(m, std::move(val)).first->second;
    }
};

// Shared per-p family, for callers that do not manage their own instance.
inline const PolyFamily& family(int p) {
    static std::map<int, PolyFamily> registry;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    return registry.try_emplace(p, p).first->second;
}

// coeff(lowdeg + j) = coeff(deg - j) for all j.
inline bool is_palindromic(const SparsePoly& f) {
    if (f.is_zero()) return true;
    const long long lo = f.lowdeg();
    const long long hi = f.deg();
    for (long long j = 0; j <= (hi - lo) / 2; ++j)
        if (f.coeff(lo + j) != f.coeff(hi - j)) return false;
    return true;
}

// Exact check of the symmetric-form recurrence for index p*m + k, 0 < k < p,
// on the doubled-exponent grid:
//
//   Sym(p*m + k) = (1/p) * C1 * Sym(m) + (1/p) * C2 * Sym(m+1)
//
// where C1 / C2 are the exponent-centered geometric sums with steps k and
// p-k (half-integer powers appear as odd stored exponents).
inline bool check_symmetric_recurrence(const PolyFamily& fam, long long m, int k) {
    const int p = fam.p();
    if (k <= 0 || k >= p) throw std::domain_error("check_symmetric_recurrence: need 0 < k < p");
    const SparsePoly lhs = fam.symmetric(p * m + k);
    const SparsePoly c1 =
        scale_shift(geometric_sum(2LL * k, p - k), BigRational(1), -static_cast<long long>(k) * (p - k - 1));
    const SparsePoly c2 =
        scale_shift(geometric_sum(2LL * (p - k), k), BigRational(1), -static_cast<long long>(k - 1) * (p - k));
    const SparsePoly rhs = scale_shift(c1 * fam.symmetric(m) + c2 * fam.symmetric(m + 1), BigRational(1, p), 0);
    return lhs == rhs;
}

}  // namespace chacon
