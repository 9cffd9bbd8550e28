#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <future>
#include <map>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "chacon/digit_stream.hpp"
#include "chacon/rational.hpp"

namespace chacon {

inline long long checked_power(int p, int exponent, long long limit, const char* what) {
    long long pow = 1;
    for (int i = 0; i < exponent; ++i) {
        pow *= p;
        if (pow > limit) throw std::length_error(std::string(what) + ": enumeration guard exceeded");
    }
    return pow;
}

// Exact bracketed distribution from a finite enumeration window.  `mass`
// holds resolved probability per value; `unresolved` is the total weight of
// prefixes whose evaluation consulted a digit outside the window.  For every
// value v the true probability lies in [mass[v], mass[v] + unresolved], and
// sum(mass) + unresolved = 1 exactly.
struct PiDistribution {
    std::map<long long, BigRational> mass;
    BigRational unresolved;

    BigRational lower(long long v) const {
        auto it = mass.find(v);
        return it == mass.end() ? BigRational() : it->second;
    }
    BigRational upper(long long v) const { return lower(v) + unresolved; }
    BigRational total() const {
        BigRational t = unresolved;
        for (const auto& [v, c] : mass) t += c;
        return t;
    }
};

// Default enumeration window: ceil(log_p m) + 6, widened by one digit when
// that still leaves the unresolved mass (exactly m * p^-K) at or above
// 10^-3.  The widening only triggers for p = 3 near powers of three.
inline int default_enumeration_window(int p, long long m) {
    if (m > 100'000'000) return 64;  // any window this needs fails the enumeration guard
    const long long cap = 200'000'000;
    int k = 6;
    long long pow = 1;
    for (int i = 0; i < 6 && pow <= cap; ++i) pow *= p;
    long long t = 1;
    while (t < m && pow <= cap) {
        t *= p;
        pow *= p;
        ++k;
    }
    while (m > 0 && 1000 * m >= pow && pow <= cap) {
        pow *= p;
        ++k;
    }
    return k;
}

namespace detail {

struct EnumBlock {
    std::map<long long, long long> counts;
    long long unresolved = 0;

    void merge(const EnumBlock& o) {
        for (const auto& [v, c] : o.counts) counts[v] += c;
        unresolved += o.unresolved;
    }
};

// Counts over the prefix range [lo, hi).  A prefix is unresolved as soon as
// one summand needs a digit >= K: a carry past the window, or a window that
// is entirely p-1 digits (both show up as n + i >= pow - 1).
inline EnumBlock enumerate_prefix_block(int p, const std::vector<long long>& w, long long m, long long pow,
                                        long long lo, long long hi) {
    EnumBlock block;
    std::unordered_map<long long, long long> counts;
    for (long long n = lo; n < hi; ++n) {
        long long sum = 0;
        bool resolved = true;
        for (long long i = 0; i < m; ++i) {
            const long long y = n + i;
            if (y >= pow - 1) {
                resolved = false;
                break;
            }
            long long t = y;
            int digit = static_cast<int>(t % p);
            while (digit == p - 1) {
                t /= p;
                digit = static_cast<int>(t % p);
            }
            sum += w[static_cast<std::size_t>(digit)];
        }
        if (resolved)
            ++counts[sum];
        else
            ++block.unresolved;
    }
    block.counts.insert(counts.begin(), counts.end());
    return block;
}

}  // namespace detail

// Distribution of the m-step Birkhoff sum by exhaustive enumeration of all
// p^K digit prefixes with unresolved tails, weight p^-K each.  Accounting is
// per prefix.  Large enumerations run block-parallel; block counts are plain
// integers, so the merged result is identical for every partition.
// Guard: p^K <= 10^8.
inline PiDistribution enumerate_pi(int p, const OmegaSpec& omega, long long m, int K) {
    if (omega.p() != p) throw std::invalid_argument("enumerate_pi: mismatched p");
    if (m < 0) throw std::domain_error("enumerate_pi: m must be nonnegative");
    if (K <= 0) throw std::domain_error("enumerate_pi: K must be positive");
    const long long pow = checked_power(p, K, 100'000'000, "enumerate_pi");
    const std::vector<long long>& w = omega.values();

    unsigned blocks = 1;
    if (pow >= 2'000'000) {
        blocks = std::min(std::thread::hardware_concurrency(), 8u);
        if (blocks == 0) blocks = 1;
    }

    detail::EnumBlock total;
    if (blocks == 1) {
        total = detail::enumerate_prefix_block(p, w, m, pow, 0, pow);
    } else {
        const long long chunk = (pow + blocks - 1) / blocks;
        std::vector<std::future<detail::EnumBlock>> futures;
        for (unsigned b = 0; b < blocks; ++b) {
            const long long lo = b * chunk;
            const long long hi = std::min(pow, lo + chunk);
            if (lo >= hi) break;
            futures.push_back(std::async(std::launch::async, detail::enumerate_prefix_block, p, std::cref(w), m,
                                         pow, lo, hi));
        }
        for (auto& f : futures) total.merge(f.get());
    }

    PiDistribution out;
    out.unresolved = BigRational(total.unresolved, pow);
    for (const auto& [v, c] : total.counts) out.mass.emplace(v, BigRational(c, pow));
    return out;
}

// Empirical distribution from n lazily sampled streams; deterministic in the
// seed (per-sample stream seeds are derived, so disjoint blocks of samples
// can be drawn independently).
struct EmpiricalDistribution {
    long long sample_count = 0;
    std::map<long long, long long> counts;

    double frequency(long long v) const {
        auto it = counts.find(v);
        return it == counts.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(sample_count);
    }
};

inline std::uint64_t sample_stream_seed(std::uint64_t seed, long long sample) {
    return mix64(seed + 0xd1b54a32d192ed03ULL * static_cast<std::uint64_t>(sample + 1));
}

inline EmpiricalDistribution sample_pi(int p, const OmegaSpec& omega, long long m, long long n, std::uint64_t seed) {
    if (omega.p() != p) throw std::invalid_argument("sample_pi: mismatched p");
    if (n <= 0) throw std::domain_error("sample_pi: n must be positive");
    EmpiricalDistribution out;
    out.sample_count = n;
    for (long long s = 0; s < n; ++s) {
        const DigitStream x = DigitStream::sampled(p, sample_stream_seed(seed, s));
        const auto v = birkhoff_sum(x, m, omega);  // sampled tails always resolve
        ++out.counts[*v];
    }
    return out;
}

enum class WindowDirection { forward, backward };

// Bracketed joint distribution of length-w windows of functional values
// along the adding-map orbit: (f(x), f(x+1), ..., f(x+w-1)) for forward,
// (f(x), f(x-1), ..., f(x-(w-1))) for backward.  Backward steps are realized
// as addition of p^K - j on the K-digit window, so borrows from the tail are
// absorbed; a coordinate is unresolved only when its K-digit window is all
// p-1 digits.
struct WindowDistribution {
    int width = 0;
    std::map<std::vector<long long>, BigRational> mass;
    BigRational unresolved;

    BigRational lower(const std::vector<long long>& key) const {
        auto it = mass.find(key);
        return it == mass.end() ? BigRational() : it->second;
    }
    BigRational upper(const std::vector<long long>& key) const { return lower(key) + unresolved; }
};

inline WindowDistribution window_distribution(int p, const OmegaSpec& omega, int w, WindowDirection direction,
                                              int K) {
    if (omega.p() != p) throw std::invalid_argument("window_distribution: mismatched p");
    if (w <= 0) throw std::domain_error("window_distribution: w must be positive");
    if (w > K) throw std::domain_error("window_distribution: need w <= K");
    const long long pow = checked_power(p, K, 100'000'000, "window_distribution");
    const std::vector<long long>& values = omega.values();

    std::map<std::vector<long long>, long long> counts;
    long long unresolved_count = 0;
    std::vector<long long> key(static_cast<std::size_t>(w));
    for (long long n = 0; n < pow; ++n) {
        bool resolved = true;
        for (int j = 0; j < w; ++j) {
            long long y = direction == WindowDirection::forward ? n + j : n - j;
            y %= pow;
            if (y < 0) y += pow;
            if (y == pow - 1) {
                resolved = false;
                break;
            }
            long long t = y;
            int digit = static_cast<int>(t % p);
            while (digit == p - 1) {
                t /= p;
                digit = static_cast<int>(t % p);
            }
            key[static_cast<std::size_t>(j)] = values[static_cast<std::size_t>(digit)];
        }
        if (resolved)
            ++counts[key];
        else
            ++unresolved_count;
    }

    WindowDistribution out;
    out.width = w;
    out.unresolved = BigRational(unresolved_count, pow);
    for (const auto& [k, c] : counts) out.mass.emplace(k, BigRational(c, pow));
    return out;
}

// Coordinatewise value flip v -> zeta - v.
inline WindowDistribution flip_window_values(const WindowDistribution& d, long long zeta) {
    WindowDistribution out;
    out.width = d.width;
    out.unresolved = d.unresolved;
    for (const auto& [key, c] : d.mass) {
        std::vector<long long> flipped(key.size());
        for (std::size_t i = 0; i < key.size(); ++i) flipped[i] = zeta - key[i];
        out.mass.emplace(std::move(flipped), c);
    }
    return out;
}

// Whether the exact-value intervals of two bracketed distributions intersect
// for every key appearing in either.
inline bool brackets_overlap(const PiDistribution& a, const PiDistribution& b) {
    auto check = [&](long long v) { return a.lower(v) <= b.upper(v) && b.lower(v) <= a.upper(v); };
    for (const auto& [v, c] : a.mass)
        if (!check(v)) return false;
    for (const auto& [v, c] : b.mass)
        if (!check(v)) return false;
    return true;
}

inline bool brackets_overlap(const WindowDistribution& a, const WindowDistribution& b) {
    auto check = [&](const std::vector<long long>& k) {
        return a.lower(k) <= b.upper(k) && b.lower(k) <= a.upper(k);
    };
    for (const auto& [k, c] : a.mass)
        if (!check(k)) return false;
    for (const auto& [k, c] : b.mass)
        if (!check(k)) return false;
    return true;
}

// Consistency of a bracketed distribution with the palindromic property of
// the m-step sum: brackets at m*min + j and m*max - j must intersect.
inline bool palindromic_within_brackets(const PiDistribution& d, long long m, const FunctionalStats& stats) {
    const long long lo = m * stats.min_value;
    const long long hi = m * stats.max_value;
    for (long long j = 0; lo + j <= hi - j; ++j) {
        const long long a = lo + j;
        const long long b = hi - j;
        if (d.lower(a) > d.upper(b) || d.lower(b) > d.upper(a)) return false;
    }
    // Nothing may sit outside [m*min, m*max].
    for (const auto& [v, c] : d.mass)
        if (v < lo || v > hi) return false;
    return true;
}

}  // namespace chacon
