#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "modsym/errors.hpp"

namespace modsym {

using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

/// Builds a rational in lowest terms from a (possibly non-canonical) pair.
inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) raise(Errc::ParseError, "rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline Rat rat_from_string(std::string_view s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string_view::npos) return Rat(Int(std::string(s)));
        Int num{std::string(s.substr(0, slash))};
        Int den{std::string(s.substr(slash + 1))};
        return make_rat(num, den);
    } catch (const std::invalid_argument&) {
        raise(Errc::ParseError, "bad rational literal '" + std::string(s) + "'");
    }
}

inline std::string rat_to_string(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

inline Int floor_rat(const Rat& q) {
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

/// Largest t with t*t <= a. Requires a >= 0.
inline Int isqrt(const Int& a) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), a.get_mpz_t());
    return r;
}

inline Int pow_int(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Rat pow_rat(const Rat& base, unsigned long e) {
    Rat r;
    mpz_pow_ui(r.get_num().get_mpz_t(), base.get_num().get_mpz_t(), e);
    mpz_pow_ui(r.get_den().get_mpz_t(), base.get_den().get_mpz_t(), e);
    return r;
}

inline Int gcd_int(const Int& a, const Int& b) {
    Int r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int lcm_int(const Int& a, const Int& b) {
    Int r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

/// FNV-1a used for content hashes of field files and certificates.
inline std::uint64_t fnv1a64(std::string_view data, std::uint64_t seed = 0xcbf29ce484222325ull) {
    std::uint64_t h = seed;
    for (unsigned char byte : data) {
        h ^= byte;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::string fnv1a64_hex(std::string_view data) {
    static const char* digits = "0123456789abcdef";
    std::uint64_t h = fnv1a64(data);
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<size_t>(i)] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

} // namespace modsym
