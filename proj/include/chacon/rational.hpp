#pragma once

#include <atomic>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

namespace chacon {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational number, always in lowest terms with positive denominator.
// Zero is represented as 0/1.  A process-wide counter tracks how many
// arithmetic operations were performed; `verify` reports it so performance
// regressions show up in the numbers rather than in wall-clock noise.
class BigRational {
public:
    BigRational() : num_(0), den_(1) {}
    BigRational(long long n) : num_(n), den_(1) {}
    BigRational(BigInt n) : num_(std::move(n)), den_(1) {}
    BigRational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }
    BigRational(long long n, long long d) : num_(n), den_(d) { normalize(); }

    const BigInt& numerator() const { return num_; }
    const BigInt& denominator() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_negative() const { return num_ < 0; }
    bool is_integer() const { return den_ == 1; }

    BigRational& operator+=(const BigRational& o) {
        count_op();
        num_ = num_ * o.den_ + o.num_ * den_;
        den_ *= o.den_;
        normalize();
        return *this;
    }
    BigRational& operator-=(const BigRational& o) {
        count_op();
        num_ = num_ * o.den_ - o.num_ * den_;
        den_ *= o.den_;
        normalize();
        return *this;
    }
    BigRational& operator*=(const BigRational& o) {
        count_op();
        num_ *= o.num_;
        den_ *= o.den_;
        normalize();
        return *this;
    }
    BigRational& operator/=(const BigRational& o) {
        if (o.is_zero()) throw std::domain_error("BigRational: division by zero");
        count_op();
        BigInt new_num = num_ * o.den_;  // temporaries so self-division works
        BigInt new_den = den_ * o.num_;
        num_ = std::move(new_num);
        den_ = std::move(new_den);
        normalize();
        return *this;
    }

    friend BigRational operator+(BigRational a, const BigRational& b) { return a += b; }
    friend BigRational operator-(BigRational a, const BigRational& b) { return a -= b; }
    friend BigRational operator*(BigRational a, const BigRational& b) { return a *= b; }
    friend BigRational operator/(BigRational a, const BigRational& b) { return a /= b; }
    BigRational operator-() const {
        BigRational r(*this);
        r.num_ = -r.num_;
        return r;
    }

    friend bool operator==(const BigRational& a, const BigRational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const BigRational& a, const BigRational& b) { return !(a == b); }
    friend bool operator<(const BigRational& a, const BigRational& b) {
        return a.num_ * b.den_ < b.num_ * a.den_;
    }
    friend bool operator<=(const BigRational& a, const BigRational& b) { return !(b < a); }
    friend bool operator>(const BigRational& a, const BigRational& b) { return b < a; }
    friend bool operator>=(const BigRational& a, const BigRational& b) { return !(a < b); }

    // "num" when integral, "num/den" otherwise; both parts in lowest terms.
    std::string to_string() const {
        std::string s = num_.str();
        if (den_ != 1) s += "/" + den_.str();
        return s;
    }

    // Accepts "num" or "num/den".
    static BigRational from_string(const std::string& s) {
        auto slash = s.find('/');
        if (slash == std::string::npos) return BigRational(BigInt(s));
        return BigRational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
    }

    double to_double() const {
        using boost::multiprecision::cpp_rational;
        return cpp_rational(num_, den_).convert_to<double>();
    }

    static std::uint64_t operation_count() { return op_counter().load(std::memory_order_relaxed); }
    static void reset_operation_count() { op_counter().store(0, std::memory_order_relaxed); }

private:
    BigInt num_;
    BigInt den_;

    void normalize() {
        if (den_.is_zero()) throw std::domain_error("BigRational: zero denominator");
        if (num_.is_zero()) {
            den_ = 1;
            return;
        }
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        BigInt g = boost::multiprecision::gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    static std::atomic<std::uint64_t>& op_counter() {
        static std::atomic<std::uint64_t> counter{0};
        return counter;
    }
    static void count_op() { op_counter().fetch_add(1, std::memory_order_relaxed); }
};

}  // namespace chacon
