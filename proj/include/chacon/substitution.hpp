#pragma once

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "chacon/rational.hpp"
#include "chacon/triangle.hpp"

namespace chacon {

// Two mirrored substitution sequences over the alphabet [0, p-2]:
//   upper — increments of the degrees of the polynomial family,
//           seed p-2, rule q -> (p-2, p-3, ..., 0 with q doubled);
//   lower — increments of the lower degrees,
//           seed 0,   rule q -> (0, 1, ..., p-2 with q doubled).
enum class SeqKind { upper, lower };

// The length-p image of one symbol under the substitution rule.
inline std::vector<int> substitution_block(int p, int value, SeqKind kind) {
    if (p < 3) throw std::invalid_argument("substitution_block: p must be >= 3");
    if (value < 0 || value > p - 2) throw std::domain_error("substitution_block: value out of [0, p-2]");
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(p));
    if (kind == SeqKind::upper) {
        for (int q = p - 2; q >= 0; --q) {
            out.push_back(q);
            if (q == value) out.push_back(q);
        }
    } else {
        for (int q = 0; q <= p - 2; ++q) {
            out.push_back(q);
            if (q == value) out.push_back(q);
        }
    }
    return out;
}

// Tier `level` of the sequence: the seed block expanded `level` times, of
// length p^{level+1}.  Tier l is a prefix of tier l+1.
inline std::vector<int> sequence_tier(int p, int level, SeqKind kind) {
    if (level < 0) throw std::domain_error("sequence_tier: level must be nonnegative");
    long long size = p;
    for (int l = 0; l < level; ++l) {
        size *= p;
        if (size > 10'000'000) throw std::length_error("sequence_tier: tier larger than 10^7 elements");
    }
    std::vector<int> cur = substitution_block(p, kind == SeqKind::upper ? p - 2 : 0, kind);
    for (int l = 0; l < level; ++l) {
        std::vector<int> next;
        next.reserve(cur.size() * static_cast<std::size_t>(p));
        for (int v : cur) {
            const std::vector<int> block = substitution_block(p, v, kind);
            next.insert(next.end(), block.begin(), block.end());
        }
        cur = std::move(next);
    }
    return cur;
}

// Random access into the infinite sequence.  Indices below p^2 read tier 1;
// index p*m + r with m >= p redirects to the block of the m-th symbol, which
// lives inside tier 1 at block position p-1-value (upper) or value+1
// (lower).  Cost is O(log_p j) with memoization.
class SubstitutionSequence {
public:
    SubstitutionSequence(int p, SeqKind kind)
        : p_(p), kind_(kind), tier1_(sequence_tier(p, 1, kind)) {}

    int p() const { return p_; }
    SeqKind kind() const { return kind_; }

    int value_at(long long j) const {
        if (j < 0) throw std::domain_error("SubstitutionSequence: index must be nonnegative");
        std::lock_guard<std::mutex> lock(mutex_);
        return value_locked(j);
    }

private:
    int p_;
    SeqKind kind_;
    std::vector<int> tier1_;
    mutable std::mutex mutex_;
    mutable std::unordered_map<long long, int> memo_;

    int value_locked(long long j) const {
        const long long tier1_size = static_cast<long long>(tier1_.size());
        if (j < tier1_size) return tier1_[static_cast<std::size_t>(j)];
        auto it = memo_.find(j);
        if (it != memo_.end()) return it->second;
        const long long m = j / p_;
        const long long r = j % p_;
        const int vm = value_locked(m);
        const long long redirect =
            kind_ == SeqKind::upper ? static_cast<long long>(p_) * (p_ - 1 - vm) + r
                                    : static_cast<long long>(p_) * (vm + 1) + r;
        const int v = value_locked(redirect);
        memo_.emplace(j, v);
        return v;
    }
};

namespace detail {
inline const SubstitutionSequence& sequence(int p, SeqKind kind) {
    static std::map<std::pair<int, int>, SubstitutionSequence> registry;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    return registry.try_emplace({p, static_cast<int>(kind)}, p, kind).first->second;
}
}  // namespace detail

// j-th degree increment (the upper sequence).
inline int degree_step(int p, long long j) { return detail::sequence(p, SeqKind::upper).value_at(j); }

// j-th lower-degree increment (the lower sequence).
inline int lower_degree_step(int p, long long j) { return detail::sequence(p, SeqKind::lower).value_at(j); }

namespace detail {

inline long long degree_rec(int p, long long m, std::unordered_map<long long, long long>& memo) {
    if (m == 0) return 0;
    if (m == 1) return p - 2;
    auto it = memo.find(m);
    if (it != memo.end()) return it->second;
    const long long q = m / p;
    const long long k = m % p;
    long long v;
    if (k == 0) {
        v = q * triangle(p - 2) + degree_rec(p, q, memo);
    } else {
        const long long dq = degree_rec(p, q, memo);
        const long long dq1 = degree_rec(p, q + 1, memo);
        v = q * triangle(p - 2) + (p - k) * (k - 1) + triangle(k - 2) + dq + std::max(p - k - 1, dq1 - dq);
    }
    memo.emplace(m, v);
    return v;
}

inline long long lower_degree_rec(int p, long long m, std::unordered_map<long long, long long>& memo) {
    if (m == 0 || m == 1) return 0;
    auto it = memo.find(m);
    if (it != memo.end()) return it->second;
    const long long q = m / p;
    const long long k = m % p;
    long long v;
    if (k == 0) {
        v = q * triangle(p - 2) + lower_degree_rec(p, q, memo);
    } else {
        const long long dq = lower_degree_rec(p, q, memo);
        const long long dq1 = lower_degree_rec(p, q + 1, memo);
        v = q * triangle(p - 2) + triangle(k - 2) + dq + std::min(k - 1, dq1 - dq);
    }
    memo.emplace(m, v);
    return v;
}

struct DegreeCaches {
    std::mutex mutex;
    std::unordered_map<long long, long long> upper;
    std::unordered_map<long long, long long> lower;
};

inline DegreeCaches& degree_caches(int p) {
    static std::map<int, DegreeCaches> registry;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    return registry[p];
}

}  // namespace detail

// Degree of the m-th family polynomial, from the degree recursion
//   D(p*m)     = m*triangle(p-2) + D(m)
//   D(p*m + k) = m*triangle(p-2) + (p-k)(k-1) + triangle(k-2) + D(m)
//                + max(p-k-1, D(m+1) - D(m)),     0 < k < p
// with D(0) = 0, D(1) = p-2.  Equals the prefix sum of degree_step.
inline long long poly_degree(int p, long long m) {
    if (p < 3) throw std::invalid_argument("poly_degree: p must be >= 3");
    if (m < 0) throw std::domain_error("poly_degree: m must be nonnegative");
    auto& caches = detail::degree_caches(p);
    std::lock_guard<std::mutex> lock(caches.mutex);
    return detail::degree_rec(p, m, caches.upper);
}

// Lower degree of the m-th family polynomial, from
//   d(p*m)     = m*triangle(p-2) + d(m)
//   d(p*m + k) = m*triangle(p-2) + triangle(k-2) + d(m)
//                + min(k-1, d(m+1) - d(m)),        0 < k < p
// with d(0) = d(1) = 0.  Equals the prefix sum of lower_degree_step.
inline long long poly_lower_degree(int p, long long m) {
    if (p < 3) throw std::invalid_argument("poly_lower_degree: p must be >= 3");
    if (m < 0) throw std::domain_error("poly_lower_degree: m must be nonnegative");
    auto& caches = detail::degree_caches(p);
    std::lock_guard<std::mutex> lock(caches.mutex);
    return detail::lower_degree_rec(p, m, caches.lower);
}

// (D + d)/2; equals (p-2)m/2 exactly.
inline BigRational mid_degree(int p, long long m) {
    return BigRational(poly_degree(p, m) + poly_lower_degree(p, m), 2);
}

}  // namespace chacon
