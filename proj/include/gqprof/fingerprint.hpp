#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string_view>

namespace gqprof {

using uint128_t = unsigned __int128;

/// Rabin-Karp polynomial fingerprints over Z_p with a random base.
///
/// phi(s) = sum_{i=0}^{|s|-1} s[i] * b^(i+1)  (mod p)
///
/// The window length is fixed at construction; roll() slides the window one
/// character in a constant number of field operations.
struct FingerprintParams {
    uint64_t p;             // prime modulus
    uint64_t b;             // base, drawn uniformly from [2, p-2]
    uint64_t b_inv;         // b^-1 mod p
    uint64_t b_pow_window;  // b^window mod p
    unsigned window;        // q - 1
    uint64_t seed;          // seed the base was drawn from
};

/// Fingerprint value in [0, p).
struct Fp {
    uint64_t value = 0;
    friend bool operator==(Fp a, Fp b) { return a.value == b.value; }
    friend bool operator!=(Fp a, Fp b) { return a.value != b.value; }
};

namespace detail {

// Largest Mersenne prime fitting a 64-bit word.
inline constexpr uint64_t kMersenne61 = (uint64_t{1} << 61) - 1;

inline uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t p) {
    uint128_t z = static_cast<uint128_t>(a) * b;
    if (p == kMersenne61) {
        // 2^61 = 1 (mod p), so fold the high bits onto the low bits twice.
        uint64_t s = static_cast<uint64_t>(z & kMersenne61) + static_cast<uint64_t>(z >> 61);
        s = (s & kMersenne61) + (s >> 61);
        return s >= kMersenne61 ? s - kMersenne61 : s;
    }
    return static_cast<uint64_t>(z % p);
}

inline uint64_t add_mod(uint64_t a, uint64_t b, uint64_t p) {
    uint64_t s = a + b;  // a, b < p <= 2^61, no wrap
    return s >= p ? s - p : s;
}

inline uint64_t sub_mod(uint64_t a, uint64_t b, uint64_t p) {
    return a >= b ? a - b : a + p - b;
}

inline uint64_t pow_mod(uint64_t base, uint64_t exp, uint64_t p) {
    uint64_t r = 1;
    base %= p;
    while (exp > 0) {
        if (exp & 1) r = mul_mod(r, base, p);
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    return r;
}

}  // namespace detail

/// Derives parameters for window length q-1. Deterministic given the seed.
/// The modulus is fixed; `prime` exists so tests can force tiny fields and
/// observe collisions.
inline FingerprintParams make_params_with_prime(unsigned q, uint64_t seed, uint64_t prime) {
    if (q < 2) throw std::invalid_argument("fingerprint window requires q >= 2");
    if (prime < 5) throw std::invalid_argument("modulus too small");
    FingerprintParams params;
    params.p = prime;
    params.window = q - 1;
    params.seed = seed;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<uint64_t> dist(2, prime - 2);
    params.b = dist(rng);
    params.b_inv = detail::pow_mod(params.b, prime - 2, prime);  // Fermat, p prime
    params.b_pow_window = detail::pow_mod(params.b, params.window, prime);
    return params;
}

inline FingerprintParams make_params(unsigned q, uint64_t seed) {
    return make_params_with_prime(q, seed, detail::kMersenne61);
}

/// Fingerprint of a full window. |s| must equal params.window.
inline Fp hash_string(const FingerprintParams& params, std::string_view s) {
    if (s.size() != params.window)
        throw std::invalid_argument("hash_string: string length does not match window");
    uint64_t acc = 0;
    uint64_t pow = 1;
    for (unsigned char c : s) {
        pow = detail::mul_mod(pow, params.b, params.p);
        acc = detail::add_mod(acc, detail::mul_mod(c, pow, params.p), params.p);
    }
    return Fp{acc};
}

/// Slides the window: given fp = hash(w), returns hash(w[1:] + in).
/// `out` must be w[0]; garbage in, garbage out otherwise.
inline Fp roll(const FingerprintParams& params, Fp fp, unsigned char out, unsigned char in) {
    uint64_t v = detail::mul_mod(fp.value, params.b_inv, params.p);
    v = detail::sub_mod(v, out % params.p, params.p);
    v = detail::add_mod(v, detail::mul_mod(in, params.b_pow_window, params.p), params.p);
    return Fp{v};
}

}  // namespace gqprof
