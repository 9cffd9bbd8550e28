#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "chacon/rational.hpp"

namespace chacon {

// Finitely supported map exponent -> rational coefficient.  Exponents are
// signed: symmetric forms are stored on a doubled-exponent grid (the stored
// exponent is twice the actual power of t), so half-integer powers never
// need a separate representation.  Zero coefficients are never stored; the
// zero polynomial is the empty map.
class SparsePoly {
public:
    using Terms = std::map<long long, BigRational>;

    SparsePoly() = default;

    static SparsePoly constant(BigRational c) { return monomial(0, std::move(c)); }

    static SparsePoly monomial(long long exponent, BigRational c) {
        SparsePoly r;
        if (!c.is_zero()) r.terms_.emplace(exponent, std::move(c));
        return r;
    }

    bool is_zero() const { return terms_.empty(); }

    // deg/lowdeg are undefined for the zero polynomial.
    long long deg() const {
        require_nonzero("deg");
        return terms_.rbegin()->first;
    }
    long long lowdeg() const {
        require_nonzero("lowdeg");
        return terms_.begin()->first;
    }

    BigRational coeff(long long exponent) const {
        auto it = terms_.find(exponent);
        return it == terms_.end() ? BigRational() : it->second;
    }

    const Terms& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    BigRational coefficient_sum() const {
        BigRational s;
        for (const auto& [e, c] : terms_) s += c;
        return s;
    }

    SparsePoly& operator+=(const SparsePoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }

    friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }

    friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
        SparsePoly r;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
        return r;
    }

    friend bool operator==(const SparsePoly& a, const SparsePoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const SparsePoly& a, const SparsePoly& b) { return !(a == b); }

    void add_term(long long exponent, const BigRational& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(exponent, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

private:
    Terms terms_;

    void require_nonzero(const char* what) const {
        if (terms_.empty()) throw std::domain_error(std::string(what) + " of zero polynomial");
    }
};

// c * t^shift * a, exactly.
inline SparsePoly scale_shift(const SparsePoly& a, const BigRational& c, long long shift) {
    SparsePoly r;
    if (c.is_zero()) return r;
    for (const auto& [e, coeff] : a.terms()) r.add_term(e + shift, c * coeff);
    return r;
}

// sum_{j=0}^{count-1} t^{j*step}; count = 0 gives the zero polynomial.
inline SparsePoly geometric_sum(long long step, long long count) {
    if (step <= 0) throw std::domain_error("geometric_sum: step must be positive");
    if (count < 0) throw std::domain_error("geometric_sum: count must be nonnegative");
    SparsePoly r;
    for (long long j = 0; j < count; ++j) r.add_term(j * step, BigRational(1));
    return r;
}

}  // namespace chacon
