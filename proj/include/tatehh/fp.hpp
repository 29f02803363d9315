#pragma once

#include <cstdint>
#include <stdexcept>

namespace tatehh {

// Residues mod a small prime are kept in uint8_t, always reduced to [0, p).
using fp_t = std::uint8_t;

inline bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

inline void require_prime(int p) {
    if (!is_prime(p) || p > 127)
        throw std::invalid_argument("characteristic must be a prime < 128");
}

inline fp_t fp_add(fp_t a, fp_t b, int p) {
    int t = a + b;
    return static_cast<fp_t>(t >= p ? t - p : t);
}

inline fp_t fp_sub(fp_t a, fp_t b, int p) {
    int t = a - b;
    return static_cast<fp_t>(t < 0 ? t + p : t);
}

inline fp_t fp_mul(fp_t a, fp_t b, int p) { return static_cast<fp_t>(a * b % p); }

inline fp_t fp_neg(fp_t a, int p) { return a == 0 ? fp_t{0} : static_cast<fp_t>(p - a); }

// Inverse by Fermat; p is prime and a != 0.
inline fp_t fp_inv(fp_t a, int p) {
    if (a == 0) throw std::domain_error("inverse of 0");
    int r = 1, base = a, e = p - 2;
    while (e) {
        if (e & 1) r = r * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return static_cast<fp_t>(r);
}

// Reduce an integer (possibly negative) into [0, p).
inline fp_t fp_of_int(long long v, int p) {
    long long r = v % p;
    if (r < 0) r += p;
    return static_cast<fp_t>(r);
}

}  // namespace tatehh
