#include <catch2/catch.hpp>

#include "chacon/digit_stream.hpp"
#include "chacon/rational.hpp"

using chacon::BigInt;
using chacon::BigRational;

TEST_CASE("rational arithmetic basics") {
    CHECK(BigRational(1, 2) + BigRational(1, 2) == BigRational(1));
    CHECK(BigRational(1, 6) + BigRational(1, 3) == BigRational(1, 2));
    CHECK(BigRational(2, 4) == BigRational(1, 2));
    CHECK(BigRational(-2, -4) == BigRational(1, 2));
    CHECK(BigRational(2, -4) == BigRational(-1, 2));
    CHECK(BigRational(1, 3) * BigRational(3, 5) == BigRational(1, 5));
    CHECK(BigRational(1, 3) / BigRational(1, 6) == BigRational(2));
    CHECK(-BigRational(1, 3) == BigRational(-1, 3));
    CHECK(BigRational(0, 7).denominator() == 1);
    CHECK(BigRational(1, 3) < BigRational(1, 2));
    CHECK(BigRational(-1, 2) < BigRational(1, 3));
}

TEST_CASE("rational error cases") {
    CHECK_THROWS_AS(BigRational(1, 0), std::domain_error);
    CHECK_THROWS_AS(BigRational(1, 2) / BigRational(0), std::domain_error);
}

TEST_CASE("rational self-aliasing compound assignments") {
    BigRational x(3, 7);
    x += x;
    CHECK(x == BigRational(6, 7));
    x -= x;
    CHECK(x == BigRational(0));
    BigRational y(-5, 4);
    y *= y;
    CHECK(y == BigRational(25, 16));
    y /= y;
    CHECK(y == BigRational(1));
}

TEST_CASE("rational strings") {
    CHECK(BigRational(1, 2).to_string() == "1/2");
    CHECK(BigRational(-3, 6).to_string() == "-1/2");
    CHECK(BigRational(7).to_string() == "7");
    CHECK(BigRational::from_string("4/6") == BigRational(2, 3));
    CHECK(BigRational::from_string("-5") == BigRational(-5));
    CHECK(BigRational::from_string(BigRational(12345, 67891).to_string()) == BigRational(12345, 67891));
}

TEST_CASE("rational stays in lowest terms under random operation sequences") {
    std::uint64_t state = 0xfeedface;
    auto next = [&state]() { return state = chacon::mix64(state); };
    auto small = [&next]() {
        const long long n = static_cast<long long>(next() % 41) - 20;
        const long long d = static_cast<long long>(next() % 19) + 1;
        return BigRational(n, d);
    };

    BigRational acc(1, 3);
    for (int i = 0; i < 10'000; ++i) {
        const BigRational r = small();
        switch (next() % 4) {
            case 0: acc += r; break;
            case 1: acc -= r; break;
            case 2: acc *= r; break;
            default:
                if (!r.is_zero()) acc /= r;
                break;
        }
        REQUIRE(acc.denominator() >= 1);
        REQUIRE(boost::multiprecision::gcd(boost::multiprecision::abs(acc.numerator()), acc.denominator()) == 1);
        if (acc.is_zero()) REQUIRE(acc.denominator() == 1);
    }
}

TEST_CASE("operation counter moves") {
    const auto before = BigRational::operation_count();
    BigRational a(1, 2);
    a += BigRational(1, 3);
    CHECK(BigRational::operation_count() > before);
}
