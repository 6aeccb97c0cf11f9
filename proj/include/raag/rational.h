#pragma once
#include <gmpxx.h>
#include <cstdint>
#include <string>
#include "raag/error.h"

namespace raag {

using Int = mpz_class;
using Rat = mpq_class;

// num/den, canonicalized. den must be nonzero.
inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw domain_error("rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline Rat make_rat(long num, long den) { return make_rat(Int(num), Int(den)); }

inline Int rat_num(const Rat& q) { return q.get_num(); }
inline Int rat_den(const Rat& q) { return q.get_den(); }

// "p" or "p/q", canonical form (GMP get_str).
inline std::string rat_str(const Rat& q) { return q.get_str(); }
inline std::string int_str(const Int& z) { return z.get_str(); }

// Accepts "p" or "p/q" with optional sign; exact.
inline Rat parse_rat(const std::string& s) {
    if (s.empty()) throw parse_error("empty rational literal");
    Rat q;
    if (q.set_str(s, 10) != 0) throw parse_error("bad rational literal: " + s);
    if (q.get_den() == 0) throw parse_error("zero denominator in rational literal: " + s);
    q.canonicalize();
    return q;
}

inline Int parse_int(const std::string& s) {
    if (s.empty()) throw parse_error("empty integer literal");
    Int z;
    if (z.set_str(s, 10) != 0) throw parse_error("bad integer literal: " + s);
    return z;
}

inline Int int_pow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline long to_long(const Int& z) {
    if (!z.fits_slong_p()) throw resource_error("integer exceeds machine range: " + z.get_str());
    return z.get_si();
}

// Deterministic splitmix64 stream; identical across platforms.
struct SmallRng {
    uint64_t state;
    explicit SmallRng(uint64_t seed) : state(seed) {}
    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // uniform in [0, n), n > 0
    uint64_t below(uint64_t n) { return next() % n; }
    long range(long lo, long hi) { // inclusive
        return lo + static_cast<long>(below(static_cast<uint64_t>(hi - lo + 1)));
    }
};

} // namespace raag
