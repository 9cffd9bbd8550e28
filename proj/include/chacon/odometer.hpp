#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "chacon/digit_stream.hpp"
#include "chacon/oracle.hpp"
#include "chacon/rational.hpp"

namespace chacon {

// Column heights h_0 = 1, h_n = p*h_{n-1} + 1.
inline long long heights(int p, int n) {
    if (p < 3) throw std::invalid_argument("heights: p must be >= 3");
    if (n < 0) throw std::domain_error("heights: n must be nonnegative");
    long long h = 1;
    for (int i = 0; i < n; ++i) {
        if (h > (std::numeric_limits<long long>::max() - 1) / p)
            throw std::overflow_error("heights: value does not fit in 64 bits");
        h = p * h + 1;
    }
    return h;
}

struct HeightTable {
    int p = 3;
    std::vector<long long> h;  // h[0..n_max]

    static HeightTable build(int p, int n_max) {
        HeightTable t;
        t.p = p;
        t.h.reserve(static_cast<std::size_t>(n_max) + 1);
        for (int n = 0; n <= n_max; ++n) t.h.push_back(heights(p, n));
        return t;
    }

    long long operator[](int n) const { return h.at(static_cast<std::size_t>(n)); }
};

// A point of the level-n system: a stream x and a floor index i with
// 0 <= i <= h_n - 1 + f(x), where f is the roof functional in use.
struct TowerPoint {
    int level = 0;
    DigitStream stream;
    long long index = 0;
};

// One step of the level-n transformation: up one floor inside the column of
// x, wrap from the top floor h_n - 1 + f(x) to (x+1, 0).
inline std::optional<TowerPoint> tower_step(const TowerPoint& pt, const OmegaSpec& omega) {
    const auto f = eval_functional(pt.stream, omega);
    if (!f) return std::nullopt;
    const long long top = heights(omega.p(), pt.level) - 1 + *f;
    if (pt.index < 0 || pt.index > top) throw std::invalid_argument("tower_step: index outside the column");
    if (pt.index < top) return TowerPoint{pt.level, pt.stream, pt.index + 1};
    auto next = add(pt.stream, 1);
    if (!next) return std::nullopt;
    return TowerPoint{pt.level, std::move(*next), 0};
}

// no_spacer_offset drops the +1 carried by the last column; it exists as a
// negative control for the conjugacy check.
enum class LiftVariant { standard, no_spacer_offset };

// Level-(n+1) coordinates of a level-n point:
//   (x, i) -> (shift x, x0 * h_n + i + [x0 = p-1]).
inline TowerPoint lift_point(const TowerPoint& pt, LiftVariant variant = LiftVariant::standard) {
    const auto d0 = pt.stream.digit(0);
    if (!d0) throw std::invalid_argument("lift_point: leading digit unresolved");
    const int p = pt.stream.p();
    const long long hn = heights(p, pt.level);
    long long index = static_cast<long long>(*d0) * hn + pt.index;
    if (variant == LiftVariant::standard && *d0 == p - 1) index += 1;
    auto shifted = shift(pt.stream);
    return TowerPoint{pt.level + 1, std::move(*shifted), index};
}

// The roof table under which lift_point is an exact conjugacy: columns
// 0..p-3 have height h_n, column p-2 carries one extra floor (the spacer the
// +1 offset steps over), and column p-1 recurses.  For p = 3 this is the
// classic table.
inline OmegaSpec lift_roof(int p) { return OmegaSpec::indicator(p, p - 2); }

struct ConjugacyReport {
    long long samples = 0;
    long long failures = 0;
    std::vector<std::string> witnesses;  // first few failing points
};

// Pointwise test of lift(step(pt)) == step(lift(pt)) on uniformly sampled
// valid points of level n.  The floor index is drawn uniformly on the
// column, which is not the invariant measure across columns; that is fine
// for a pointwise identity.
inline ConjugacyReport check_conjugacy(int p, int n, long long n_samples, std::uint64_t seed,
                                       const OmegaSpec& omega, LiftVariant variant = LiftVariant::standard) {
    if (omega.p() != p) throw std::invalid_argument("check_conjugacy: mismatched p");
    ConjugacyReport report;
    report.samples = n_samples;
    const long long hn = heights(p, n);
    for (long long s = 0; s < n_samples; ++s) {
        const std::uint64_t stream_seed = sample_stream_seed(seed, s);
        const DigitStream x = DigitStream::sampled(p, stream_seed);
        const long long f = *eval_functional(x, omega);
        const long long top = hn - 1 + f;
        const long long i = static_cast<long long>(mix64(stream_seed ^ 0x632be59bd9b4e019ULL) %
                                                   static_cast<std::uint64_t>(top + 1));
        const TowerPoint pt{n, x, i};

        const auto stepped = tower_step(pt, omega);
        const TowerPoint lhs = lift_point(*stepped, variant);
        // A lift image outside the level-(n+1) space is itself a conjugacy
        // failure, not a precondition violation of this check.
        std::optional<TowerPoint> rhs;
        bool rhs_valid = true;
        try {
            rhs = tower_step(lift_point(pt, variant), omega);
        } catch (const std::invalid_argument&) {
            rhs_valid = false;
        }

        const bool equal = rhs_valid && rhs && lhs.index == rhs->index && lhs.stream == rhs->stream;
        if (!equal) {
            ++report.failures;
            if (report.witnesses.size() < 8) {
                std::ostringstream os;
                os << "p=" << p << " n=" << n << " i=" << i << " x=";
                for (std::size_t k = 0; k < 6; ++k) os << *x.digit(k) << (k + 1 < 6 ? "," : ",...");
                os << " lift(step)=" << lhs.index << " step(lift)=";
                if (!rhs_valid)
                    os << "out-of-column";
                else
                    os << (rhs ? std::to_string(rhs->index) : "unresolved");
                report.witnesses.push_back(os.str());
            }
        }
    }
    return report;
}

inline ConjugacyReport check_conjugacy(int p, int n, long long n_samples, std::uint64_t seed) {
    return check_conjugacy(p, n, n_samples, seed, lift_roof(p));
}

struct Bracket {
    BigRational lower;
    BigRational upper;

    bool contains(const BigRational& v) const { return lower <= v && v <= upper; }
};

inline BigRational omega_mean(const OmegaSpec& omega) {
    BigInt sum = 0;
    for (long long v : omega.values()) sum += v;
    return BigRational(sum, BigInt(omega.p() - 1));
}

// Invariant-measure mass of floor set E_{n,i}, as an exact bracket from a
// K-digit window: (1/(h_n + mean(omega))) * lambda{f >= i - (h_n - 1)}.
// The mean normalizer makes the whole space have measure 1 for any roof;
// `paper_normalizer` forces the constant h_n + 1/2 instead (the two agree
// for the classic table at p = 3).
inline Bracket measure_of_level(int p, int n, long long i, int K, const OmegaSpec& omega,
                                bool paper_normalizer = false) {
    if (omega.p() != p) throw std::invalid_argument("measure_of_level: mismatched p");
    if (i < 0) throw std::domain_error("measure_of_level: i must be nonnegative");
    const long long hn = heights(p, n);
    const BigRational normalizer =
        BigRational(hn) + (paper_normalizer ? BigRational(1, 2) : omega_mean(omega));

    const long long v = i - (hn - 1);
    if (v <= 0) {
        const BigRational exact = BigRational(1) / normalizer;
        return Bracket{exact, exact};
    }

    const long long pow = checked_power(p, K, 100'000'000, "measure_of_level");
    const std::vector<long long>& values = omega.values();
    long long count = 0;
    for (long long x = 0; x < pow - 1; ++x) {  // x = pow-1 is the unresolved all-(p-1) window
        long long t = x;
        int digit = static_cast<int>(t % p);
        while (digit == p - 1) {
            t /= p;
            digit = static_cast<int>(t % p);
        }
        if (values[static_cast<std::size_t>(digit)] >= v) ++count;
    }
    return Bracket{BigRational(count, pow) / normalizer, BigRational(count + 1, pow) / normalizer};
}

inline Bracket measure_of_level(int p, int n, long long i, int K) {
    return measure_of_level(p, n, i, K, OmegaSpec::classic(p));
}

// Visits to a given floor along the orbit of a sampled start point (started
// at floor 0 of its column).
inline long long count_floor_visits(int p, int n, long long steps, std::uint64_t seed, const OmegaSpec& omega,
                                    long long floor) {
    TowerPoint pt{n, DigitStream::sampled(p, seed), 0};
    long long visits = 0;
    for (long long s = 0; s < steps; ++s) {
        if (pt.index == floor) ++visits;
        pt = *tower_step(pt, omega);
    }
    return visits;
}

}  // namespace chacon
