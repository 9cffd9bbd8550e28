#include <catch2/catch.hpp>

#include <cmath>

#include "chacon/odometer.hpp"

using chacon::BigRational;
using chacon::DigitStream;
using chacon::OmegaSpec;
using chacon::TowerPoint;

TEST_CASE("heights recurrence and closed form") {
    CHECK(chacon::heights(3, 0) == 1);
    CHECK(chacon::heights(3, 2) == 13);
    CHECK(chacon::heights(5, 1) == 6);
    CHECK_THROWS_AS(chacon::heights(3, 60), std::overflow_error);

    for (int p : {3, 4, 5, 7})
        for (int n = 0; n <= 10; ++n) {
            long long pow = 1;
            for (int i = 0; i <= n; ++i) pow *= p;
            REQUIRE(chacon::heights(p, n) == (pow - 1) / (p - 1));
        }

    const auto table = chacon::HeightTable::build(3, 4);
    CHECK(table[0] == 1);
    CHECK(table[4] == 121);
    for (int n = 1; n <= 4; ++n) REQUIRE(table[n] == 3 * table[n - 1] + 1);
}

TEST_CASE("tower step") {
    const OmegaSpec classic3 = OmegaSpec::classic(3);

    // Column of height h_0 + f: (0,...) has f = 0, so floor 0 is the top.
    const auto wrap = chacon::tower_step(TowerPoint{0, DigitStream::from_prefix(3, {0, 0}), 0}, classic3);
    REQUIRE(wrap);
    CHECK(wrap->stream.prefix() == std::vector<int>{1, 0});
    CHECK(wrap->index == 0);

    // (1,...) has f = 1: floor 0 moves up inside the column.
    const auto up = chacon::tower_step(TowerPoint{0, DigitStream::from_prefix(3, {1, 0}), 0}, classic3);
    REQUIRE(up);
    CHECK(up->stream.prefix() == std::vector<int>{1, 0});
    CHECK(up->index == 1);

    // Level 1, x = (0,...): top floor is h_1 - 1 + 0 = 3.
    const auto mid = chacon::tower_step(TowerPoint{1, DigitStream::from_prefix(3, {0, 0, 0}), 2}, classic3);
    REQUIRE(mid);
    CHECK(mid->index == 3);

    CHECK_FALSE(chacon::tower_step(TowerPoint{0, DigitStream::from_prefix(3, {2, 2}), 0}, classic3));
    CHECK_THROWS_AS(chacon::tower_step(TowerPoint{0, DigitStream::from_prefix(3, {0, 0}), 5}, classic3),
                    std::invalid_argument);
}

TEST_CASE("lift formula") {
    const auto a = chacon::lift_point(TowerPoint{0, DigitStream::from_prefix(3, {1, 0}), 0});
    CHECK(a.level == 1);
    CHECK(a.stream.prefix() == std::vector<int>{0});
    CHECK(a.index == 1);

    const auto b = chacon::lift_point(TowerPoint{0, DigitStream::from_prefix(3, {2, 0}), 0});
    CHECK(b.index == 3);

    CHECK_THROWS_AS(chacon::lift_point(TowerPoint{0, DigitStream::from_prefix(3, {}), 0}),
                    std::invalid_argument);
}

TEST_CASE("lift images land on the expected floors") {
    std::uint64_t state = 0xfeed;
    for (int p : {3, 4, 5, 7}) {
        const OmegaSpec roof = chacon::lift_roof(p);
        for (int n = 0; n <= 2; ++n) {
            const long long hn = chacon::heights(p, n);
            for (int trial = 0; trial < 200; ++trial) {
                const auto x = DigitStream::sampled(p, chacon::mix64(state += 1));
                const long long f = *chacon::eval_functional(x, roof);
                const long long i = static_cast<long long>(chacon::mix64(state += 1) %
                                                           static_cast<std::uint64_t>(hn + f));
                const auto lifted = chacon::lift_point(TowerPoint{n, x, i});
                const int x0 = *x.digit(0);
                if (x0 <= p - 2)
                    REQUIRE(lifted.index == x0 * hn + i);
                else
                    REQUIRE(lifted.index == (p - 1) * hn + i + 1);
                if (p == 3)
                    REQUIRE((lifted.index == i || lifted.index == hn + i || lifted.index == 2 * hn + i + 1));
            }
        }
    }
}

TEST_CASE("lift conjugates consecutive levels") {
    for (int p : {3, 4, 5, 7})
        for (int n = 0; n <= 2; ++n) {
            const auto report = chacon::check_conjugacy(p, n, 1500, 2024);
            INFO("p=" << p << " n=" << n);
            REQUIRE(report.failures == 0);
        }

    // classic table at p = 3 is the matching roof, so it also passes
    const auto classic_ok = chacon::check_conjugacy(3, 1, 1500, 7, OmegaSpec::classic(3));
    CHECK(classic_ok.failures == 0);

    // ... and at p = 5 it is not: column heights no longer fit the offsets.
    const auto classic_bad = chacon::check_conjugacy(5, 0, 1500, 7, OmegaSpec::classic(5));
    CHECK(classic_bad.failures > 0);
}

TEST_CASE("corrupted lift is caught with witnesses") {
    const auto report =
        chacon::check_conjugacy(3, 1, 2000, 11, chacon::lift_roof(3), chacon::LiftVariant::no_spacer_offset);
    CHECK(report.failures > 0);
    CHECK(!report.witnesses.empty());
    CHECK(report.witnesses.front().find("p=3") != std::string::npos);
}

TEST_CASE("floor measures") {
    const auto full = chacon::measure_of_level(3, 0, 0, 6);
    CHECK(full.lower == BigRational(2, 3));
    CHECK(full.upper == BigRational(2, 3));

    const auto spacer = chacon::measure_of_level(3, 0, 1, 8);
    CHECK(spacer.contains(BigRational(1, 3)));
    CHECK(spacer.upper - spacer.lower <= BigRational(1, 6561));

    // Normalizers: mean-of-table vs the fixed 1/2 constant.
    const auto general = chacon::measure_of_level(5, 0, 0, 6, OmegaSpec::classic(5));
    CHECK(general.lower == BigRational(1) / (BigRational(1) + BigRational(3, 2)));
    const auto printed = chacon::measure_of_level(5, 0, 0, 6, OmegaSpec::classic(5), true);
    CHECK(printed.lower == BigRational(2, 3));

    SECTION("exactly h_n floors carry full mass") {
        for (int p : {3, 5})
            for (int n = 0; n <= 1; ++n) {
                const OmegaSpec omega = OmegaSpec::classic(p);
                const BigRational full = BigRational(1) / (BigRational(chacon::heights(p, n)) + chacon::omega_mean(omega));
                long long full_floors = 0;
                for (long long i = 0; i <= chacon::heights(p, n) - 1 + omega.max_value(); ++i) {
                    const auto b = chacon::measure_of_level(p, n, i, 6, omega);
                    if (b.lower == full && b.upper == full) ++full_floors;
                }
                REQUIRE(full_floors == chacon::heights(p, n));
            }
    }

    SECTION("floor masses sum to 1") {
        for (int p : {3, 4}) {
            const OmegaSpec omega = OmegaSpec::classic(p);
            const int n = 1;
            const long long hn = chacon::heights(p, n);
            BigRational lo, hi;
            for (long long i = 0; i <= hn - 1 + omega.max_value(); ++i) {
                const auto b = chacon::measure_of_level(p, n, i, 7, omega);
                lo += b.lower;
                hi += b.upper;
            }
            REQUIRE(lo <= BigRational(1));
            REQUIRE(BigRational(1) <= hi);
        }
    }
}

TEST_CASE("orbit frequency of the base floor matches its measure") {
    struct Case {
        int p, n;
        OmegaSpec omega;
    };
    const std::vector<Case> cases{{3, 1, OmegaSpec::classic(3)},
                                  {4, 1, OmegaSpec::classic(4)},
                                  {5, 0, chacon::lift_roof(5)}};
    for (const auto& cs : cases) {
        const long long steps = 200'000;
        const long long visits = chacon::count_floor_visits(cs.p, cs.n, steps, 313, cs.omega, 0);
        const double q =
            (BigRational(1) / (BigRational(chacon::heights(cs.p, cs.n)) + chacon::omega_mean(cs.omega))).to_double();
        const double freq = static_cast<double>(visits) / static_cast<double>(steps);
        const double tol = 4.0 * std::sqrt(q * (1.0 - q) / static_cast<double>(steps));
        INFO("p=" << cs.p << " n=" << cs.n << " freq=" << freq << " q=" << q);
        REQUIRE(std::abs(freq - q) <= tol + 1.0 / static_cast<double>(steps));
    }
}
