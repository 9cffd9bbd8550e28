#include <catch2/catch.hpp>

#include <cmath>
#include <map>

#include "chacon/digit_stream.hpp"

using chacon::DigitStream;
using chacon::OmegaSpec;

namespace {

const OmegaSpec legendre7(7, {1, 1, 0, 1, 0, 0});

}  // namespace

TEST_CASE("shift drops the first digit") {
    const auto x = DigitStream::from_prefix(3, {2, 0, 1});
    const auto y = chacon::shift(x);
    REQUIRE(y);
    CHECK(y->prefix() == std::vector<int>{0, 1});

    const auto z = chacon::shift(*chacon::shift(*y));
    REQUIRE(z);
    CHECK(z->prefix().empty());

    CHECK_FALSE(chacon::shift(*z));  // unresolved tail, nothing left to drop

    const auto s = DigitStream::sampled(3, 99);
    const auto shifted = chacon::shift(s);
    REQUIRE(shifted);
    CHECK(*shifted->digit(0) == *s.digit(1));
}

TEST_CASE("add propagates carries") {
    const auto no_carry = chacon::add(DigitStream::from_prefix(3, {1, 0}), 1);
    REQUIRE(no_carry);
    CHECK(no_carry->prefix() == std::vector<int>{2, 0});

    const auto one_carry = chacon::add(DigitStream::from_prefix(3, {2, 0}), 1);
    REQUIRE(one_carry);
    CHECK(one_carry->prefix() == std::vector<int>{0, 1});

    const auto chain = chacon::add(DigitStream::from_prefix(3, {2, 2, 0}), 1);
    REQUIRE(chain);
    CHECK(chain->prefix() == std::vector<int>{0, 0, 1});

    CHECK_FALSE(chacon::add(DigitStream::from_prefix(3, {2, 2}), 1));  // carry past unresolved prefix

    // Carry into a sampled tail materializes exactly the digits it needs.
    const auto s = DigitStream::sampled_with_prefix(3, {2, 2}, 7);
    const auto sum = chacon::add(s, 1);
    REQUIRE(sum);
    CHECK(sum->prefix()[0] == 0);
    CHECK(sum->prefix()[1] == 0);
}

TEST_CASE("add is additive in the increment") {
    std::uint64_t state = 0x5eed;
    for (int trial = 0; trial < 200; ++trial) {
        const int p = 3 + static_cast<int>(chacon::mix64(state += 1) % 5);
        const auto x = DigitStream::sampled(p, chacon::mix64(state += 1));
        const unsigned long long i = chacon::mix64(state += 1) % 1001;
        const unsigned long long j = chacon::mix64(state += 1) % 1001;
        const auto two_steps = chacon::add(*chacon::add(x, i), j);
        const auto one_step = chacon::add(x, i + j);
        REQUIRE(two_steps);
        REQUIRE(one_step);
        REQUIRE(*two_steps == *one_step);
    }
}

TEST_CASE("functional evaluation") {
    const OmegaSpec classic3 = OmegaSpec::classic(3);
    CHECK(*chacon::eval_functional(DigitStream::from_prefix(3, {1}), classic3) == 1);
    CHECK(*chacon::eval_functional(DigitStream::from_prefix(3, {2, 2, 0}), classic3) == 0);
    CHECK(*chacon::eval_functional(DigitStream::from_prefix(7, {6, 6, 3}), legendre7) == 1);
    CHECK_FALSE(chacon::eval_functional(DigitStream::from_prefix(3, {2, 2}), classic3));
    CHECK_THROWS_AS(chacon::eval_functional(DigitStream::from_prefix(3, {1}), legendre7), std::invalid_argument);
}

TEST_CASE("birkhoff sums") {
    const OmegaSpec classic3 = OmegaSpec::classic(3);
    CHECK(*chacon::birkhoff_sum(DigitStream::from_prefix(3, {0, 0}), 0, classic3) == 0);
    CHECK(*chacon::birkhoff_sum(DigitStream::from_prefix(3, {0, 0}), 2, classic3) == 1);
    CHECK(*chacon::birkhoff_sum(DigitStream::from_prefix(3, {0, 0, 0}), 3, classic3) == 1);
    // A summand that would need digits past the prefix is unresolved.
    CHECK_FALSE(chacon::birkhoff_sum(DigitStream::from_prefix(3, {2}), 2, classic3));
}

TEST_CASE("carry past the first digit matches a shifted evaluation") {
    // For x starting with p-1: f(x + p*j) = f(shift(x) + j).
    for (const OmegaSpec& omega : {OmegaSpec::classic(3), OmegaSpec::classic(5), legendre7}) {
        const int p = omega.p();
        std::uint64_t state = 0x1234 + static_cast<std::uint64_t>(p);
        for (int trial = 0; trial < 40; ++trial) {
            const auto x = DigitStream::sampled_with_prefix(p, {p - 1}, chacon::mix64(state += 1));
            for (unsigned long long j = 0; j <= 100; j += 7) {
                const auto lhs = chacon::eval_functional(*chacon::add(x, static_cast<unsigned long long>(p) * j), omega);
                const auto rhs = chacon::eval_functional(*chacon::add(*chacon::shift(x), j), omega);
                REQUIRE(*lhs == *rhs);
            }
        }
    }
}

TEST_CASE("sampled digits are uniform and shift-invariant") {
    const int p = 5;
    const int n = 60'000;
    std::map<int, int> first;
    std::map<int, int> shifted;
    for (int s = 0; s < n; ++s) {
        const auto x = DigitStream::sampled(p, 0xc0ffee + static_cast<std::uint64_t>(s));
        ++first[*x.digit(0)];
        ++shifted[*chacon::shift(x)->digit(0)];
    }
    const double q = 1.0 / p;
    const double tol = 4.0 * std::sqrt(q * (1.0 - q) / n);
    for (int d = 0; d < p; ++d) {
        CHECK(std::abs(first[d] / static_cast<double>(n) - q) < tol);
        CHECK(std::abs(shifted[d] / static_cast<double>(n) - q) < tol);
    }
}

TEST_CASE("antipalindromic tables") {
    CHECK(chacon::check_antipalindromic(OmegaSpec::classic(3)) == 1);
    CHECK(chacon::check_antipalindromic(legendre7) == 1);
    CHECK_FALSE(chacon::check_antipalindromic(OmegaSpec(4, {0, 0, 1})));
    CHECK(chacon::check_antipalindromic(OmegaSpec::classic(9)) == 7);
    CHECK(chacon::check_antipalindromic(OmegaSpec(4, {0, 0, 0})) == 0);
    CHECK(chacon::check_antipalindromic(OmegaSpec(4, {2, 1, 0})) == 2);
    // Range must be exactly [0, zeta]: {0, 2} misses 1.
    CHECK_FALSE(chacon::check_antipalindromic(OmegaSpec(5, {0, 2, 0, 2})));
}

TEST_CASE("affine images") {
    CHECK(chacon::affine_image(OmegaSpec::classic(3), 1, 0).values() == std::vector<long long>{0, 1});
    CHECK(chacon::affine_image(OmegaSpec::classic(3), 2, 1).values() == std::vector<long long>{1, 3});
    CHECK_THROWS_AS(chacon::affine_image(OmegaSpec(4, {0, 0, 1}), 2, 1), std::domain_error);
    CHECK_THROWS_AS(chacon::affine_image(OmegaSpec::classic(3), 0, 1), std::domain_error);
}

TEST_CASE("partial sums of the classic table") {
    CHECK(chacon::omega_partial_sum(OmegaSpec::classic(5), 1, 3) == 6);
    CHECK(chacon::omega_partial_sum(OmegaSpec::classic(5), 0, 1) == 0);
    CHECK(chacon::omega_partial_sum(OmegaSpec::classic(4), 0, 3) == 3);
    CHECK_THROWS_AS(chacon::omega_partial_sum(OmegaSpec::classic(5), 2, 3), std::domain_error);
    CHECK_THROWS_AS(chacon::omega_partial_sum(legendre7, 0, 2), std::domain_error);

    // Closed form against the direct sum wherever it is defined.
    for (int p : {3, 4, 5, 7, 9}) {
        const OmegaSpec omega = OmegaSpec::classic(p);
        for (long long j = 0; j <= p - 2; ++j)
            for (long long k = 1; j + k <= p - 1; ++k) {
                long long direct = 0;
                for (long long i = j; i < j + k; ++i) direct += omega(i);
                REQUIRE(chacon::omega_partial_sum(omega, j, k) == direct);
            }
    }
}

TEST_CASE("omega validation") {
    CHECK_THROWS_AS(OmegaSpec(2, {0}), std::invalid_argument);
    CHECK_THROWS_AS(OmegaSpec(4, {0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(OmegaSpec(4, {0, -1, 2}), std::invalid_argument);
    CHECK(chacon::functional_stats(legendre7).min_value == 0);
    CHECK(chacon::functional_stats(legendre7).max_value == 1);
    CHECK(chacon::functional_stats(OmegaSpec::classic(7)).spread() == 5);
}
