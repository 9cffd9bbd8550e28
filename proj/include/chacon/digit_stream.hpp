#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

namespace chacon {

// SplitMix64 finalizer; used as a counter-based generator so that the k-th
// lazy digit of a stream is a pure function of (seed, k).
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Uniform digit in [0, p) from (seed, index), with rejection to kill the
// modulo bias.  Rejection retries are themselves deterministic.
inline int sample_digit(int p, std::uint64_t seed, std::uint64_t index) {
    const std::uint64_t up = static_cast<std::uint64_t>(p);
    const std::uint64_t zone = UINT64_MAX - UINT64_MAX % up;
    std::uint64_t h = mix64(seed ^ mix64(index + 1));
    std::uint64_t retry = 0;
    while (h >= zone) h = mix64(h + mix64(++retry));
    return static_cast<int>(h % up);
}

// Table omega : [0, p-2] -> nonnegative integers defining a Chacon-like
// functional: the functional reads omega of the first digit != p-1.
class OmegaSpec {
public:
    OmegaSpec(int p, std::vector<long long> values) : p_(p), values_(std::move(values)) {
        if (p_ < 3) throw std::invalid_argument("OmegaSpec: p must be >= 3");
        if (values_.size() != static_cast<std::size_t>(p_ - 1))
            throw std::invalid_argument("OmegaSpec: table must have exactly p-1 entries");
        for (long long v : values_)
            if (v < 0) throw std::invalid_argument("OmegaSpec: entries must be nonnegative");
    }

    // omega(j) = j.
    static OmegaSpec classic(int p) {
        std::vector<long long> v(static_cast<std::size_t>(p - 1));
        for (int j = 0; j < p - 1; ++j) v[static_cast<std::size_t>(j)] = j;
        return OmegaSpec(p, std::move(v));
    }

    // omega = 1 at position j, 0 elsewhere.
    static OmegaSpec indicator(int p, int j) {
        std::vector<long long> v(static_cast<std::size_t>(p - 1), 0);
        v.at(static_cast<std::size_t>(j)) = 1;
        return OmegaSpec(p, std::move(v));
    }

    int p() const { return p_; }
    const std::vector<long long>& values() const { return values_; }

    long long operator()(long long j) const {
        if (j < 0 || j > p_ - 2) throw std::domain_error("OmegaSpec: argument out of [0, p-2]");
        return values_[static_cast<std::size_t>(j)];
    }

    long long min_value() const {
        long long m = values_[0];
        for (long long v : values_)
            if (v < m) m = v;
        return m;
    }
    long long max_value() const {
        long long m = values_[0];
        for (long long v : values_)
            if (v > m) m = v;
        return m;
    }

    friend bool operator==(const OmegaSpec& a, const OmegaSpec& b) {
        return a.p_ == b.p_ && a.values_ == b.values_;
    }

private:
    int p_;
    std::vector<long long> values_;
};

// min / max / spread of the functional induced by an omega table.
struct FunctionalStats {
    long long min_value = 0;
    long long max_value = 0;
    long long spread() const { return max_value - min_value; }
};

inline FunctionalStats functional_stats(const OmegaSpec& omega) {
    return FunctionalStats{omega.min_value(), omega.max_value()};
}

// Returns the top of the range when omega is antipalindromic (range exactly
// [0, z] and omega(j) = z - omega(p-2-j) for all j), nullopt otherwise.
inline std::optional<long long> check_antipalindromic(const OmegaSpec& omega) {
    const int p = omega.p();
    if (omega.min_value() != 0) return std::nullopt;
    const long long z = omega.max_value();
    std::vector<bool> hit(static_cast<std::size_t>(z + 1), false);
    for (int j = 0; j <= p - 2; ++j) {
        if (omega(j) != z - omega(p - 2 - j)) return std::nullopt;
        hit[static_cast<std::size_t>(omega(j))] = true;
    }
    for (bool h : hit)
        if (!h) return std::nullopt;
    return z;
}

// Table a*omega(j) + b.  Only defined for antipalindromic omega; the image
// induces distributions that stay palindromic after the index change
// value = m*b + q*a.
inline OmegaSpec affine_image(const OmegaSpec& omega, long long a, long long b) {
    if (a <= 0 || b < 0) throw std::domain_error("affine_image: need a > 0, b >= 0");
    if (!check_antipalindromic(omega)) throw std::domain_error("affine_image: omega must be antipalindromic");
    std::vector<long long> v;
    v.reserve(omega.values().size());
    for (long long x : omega.values()) v.push_back(a * x + b);
    return OmegaSpec(omega.p(), std::move(v));
}

// omega(j) + omega(j+1) + ... + omega(j+k-1) for the classic table, in closed
// form k*j + (k-1)k/2.  Requires j + k <= p - 1 so every summand is a direct
// table read.
inline long long omega_partial_sum(const OmegaSpec& omega, long long j, long long k) {
    const int p = omega.p();
    for (int i = 0; i <= p - 2; ++i)
        if (omega(i) != i) throw std::domain_error("omega_partial_sum: classic table required");
    if (j < 0 || k <= 0 || j + k > p - 1) throw std::domain_error("omega_partial_sum: need 0 <= j, 0 < k, j + k <= p - 1");
    return k * j + k * (k - 1) / 2;
}

// A point of the p-adic digit space: an explicit finite prefix (digit 0 is
// least significant) plus a tail policy.  A Sampled tail yields i.i.d.
// uniform digits lazily, as a pure function of (seed, source index), so a
// stream is immutable even when digits beyond the prefix are consulted.  An
// Unresolved tail means "nothing is known past the prefix": operations that
// would have to look there report nullopt instead.
class DigitStream {
public:
    struct Unresolved {
        friend bool operator==(const Unresolved&, const Unresolved&) { return true; }
    };
    struct Sampled {
        std::uint64_t seed = 0;
        std::uint64_t next_index = 0;  // generator index of the first digit past the prefix
        friend bool operator==(const Sampled& a, const Sampled& b) {
            return a.seed == b.seed && a.next_index == b.next_index;
        }
    };
    using Tail = std::variant<Unresolved, Sampled>;

    static DigitStream from_prefix(int p, std::vector<int> digits) {
        return DigitStream(p, std::move(digits), Unresolved{});
    }
    static DigitStream sampled(int p, std::uint64_t seed) { return DigitStream(p, {}, Sampled{seed, 0}); }
    static DigitStream sampled_with_prefix(int p, std::vector<int> digits, std::uint64_t seed) {
        return DigitStream(p, std::move(digits), Sampled{seed, 0});
    }

    int p() const { return p_; }
    const std::vector<int>& prefix() const { return prefix_; }
    const Tail& tail() const { return tail_; }
    bool tail_unresolved() const { return std::holds_alternative<Unresolved>(tail_); }

    // Digit at position k, nullopt when k is past an Unresolved prefix.
    std::optional<int> digit(std::size_t k) const {
        if (k < prefix_.size()) return prefix_[k];
        if (const auto* s = std::get_if<Sampled>(&tail_))
            return sample_digit(p_, s->seed, s->next_index + (k - prefix_.size()));
        return std::nullopt;
    }

    // Equality of the resolved information: identical digits over the common
    // materialized range and identical tail source.  Streams derived from
    // one sampled source compare equal exactly when they denote the same
    // point.
    friend bool operator==(const DigitStream& a, const DigitStream& b) {
        if (a.p_ != b.p_) return false;
        if (a.tail_.index() != b.tail_.index()) return false;
        if (a.tail_unresolved()) return a.prefix_ == b.prefix_;
        const std::size_t len = std::max(a.prefix_.size(), b.prefix_.size());
        for (std::size_t k = 0; k < len; ++k)
            if (*a.digit(k) != *b.digit(k)) return false;
        return a.source_index_at(len) == b.source_index_at(len);
    }
    friend bool operator!=(const DigitStream& a, const DigitStream& b) { return !(a == b); }

private:
    int p_;
    std::vector<int> prefix_;
    Tail tail_;

    DigitStream(int p, std::vector<int> prefix, Tail tail)
        : p_(p), prefix_(std::move(prefix)), tail_(std::move(tail)) {
        if (p_ < 3) throw std::invalid_argument("DigitStream: p must be >= 3");
        for (int d : prefix_)
            if (d < 0 || d >= p_) throw std::invalid_argument("DigitStream: digit out of [0, p-1]");
    }

    std::uint64_t source_index_at(std::size_t pos) const {
        const auto& s = std::get<Sampled>(tail_);
        return s.next_index + (pos - prefix_.size());
    }

    friend std::optional<DigitStream> shift(const DigitStream&);
    friend std::optional<DigitStream> add(const DigitStream&, unsigned long long);
};

// Drops the first digit.  Unresolved with empty prefix has no digit to drop.
inline std::optional<DigitStream> shift(const DigitStream& x) {
    DigitStream r = x;
    if (!r.prefix_.empty()) {
        r.prefix_.erase(r.prefix_.begin());
        return r;
    }
    if (auto* s = std::get_if<DigitStream::Sampled>(&r.tail_)) {
        ++s->next_index;
        return r;
    }
    return std::nullopt;
}

// Base-p addition of a nonnegative integer with carry propagation from digit
// 0.  Consults exactly as many digits as carries require; a carry past an
// Unresolved prefix yields nullopt.
inline std::optional<DigitStream> add(const DigitStream& x, unsigned long long j) {
    if (j > (1ULL << 62)) throw std::domain_error("add: increment too large");
    DigitStream r = x;
    const auto p = static_cast<unsigned long long>(r.p_);
    std::size_t pos = 0;
    unsigned long long carry = j;
    while (carry > 0) {
        if (pos == r.prefix_.size()) {
            auto* s = std::get_if<DigitStream::Sampled>(&r.tail_);
            if (s == nullptr) return std::nullopt;
            r.prefix_.push_back(sample_digit(r.p_, s->seed, s->next_index));
            ++s->next_index;
        }
        const unsigned long long total = static_cast<unsigned long long>(r.prefix_[pos]) + carry;
        r.prefix_[pos] = static_cast<int>(total % p);
        carry = total / p;
        ++pos;
    }
    return r;
}

// omega at the first digit != p-1; nullopt if every known digit is p-1 and
// the tail is unresolved.
inline std::optional<long long> eval_functional(const DigitStream& x, const OmegaSpec& omega) {
    if (x.p() != omega.p()) throw std::invalid_argument("eval_functional: mismatched p");
    const int top = x.p() - 1;
    // With a sampled tail the scan terminates a.s.; the cap only trips on a
    // broken generator.
    constexpr std::size_t scan_cap = 1u << 20;
    for (std::size_t k = 0; k < scan_cap; ++k) {
        const auto d = x.digit(k);
        if (!d) return std::nullopt;
        if (*d != top) return omega(*d);
    }
    throw std::logic_error("eval_functional: digit scan did not terminate");
}

// Birkhoff sum of the functional over the first m steps of the adding map:
// f(x) + f(x+1) + ... + f(x+m-1).  m = 0 gives 0.
inline std::optional<long long> birkhoff_sum(const DigitStream& x, long long m, const OmegaSpec& omega) {
    if (m < 0) throw std::domain_error("birkhoff_sum: m must be nonnegative");
    long long total = 0;
    std::optional<DigitStream> y = x;
    for (long long i = 0; i < m; ++i) {
        if (i > 0) {
            y = add(*y, 1);
            if (!y) return std::nullopt;
        }
        const auto v = eval_functional(*y, omega);
        if (!v) return std::nullopt;
        total += *v;
    }
    return total;
}

}  // namespace chacon
