#pragma once

#include <stdexcept>

namespace chacon {

// n-th triangle number n(n+1)/2, extended with triangle(-1) = 0 so that
// exponent offsets indexed by k-2 vanish at k = 1.
inline long long triangle(long long n) {
    if (n < -1) throw std::domain_error("triangle: n must be >= -1");
    return n * (n + 1) / 2;
}

}  // namespace chacon
