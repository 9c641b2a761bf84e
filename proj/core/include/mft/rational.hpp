#pragma once

#include <gmpxx.h>
#include <string>
#include <stdexcept>

namespace mft {

// Exact rational arithmetic for all combinatorial bookkeeping.
using Rat = mpq_class;

inline Rat ratFromLong(long n) { return Rat(n); }

inline Rat ratFromString(const std::string& s) {
    Rat q;
    if (q.set_str(s, 10) != 0)
        throw std::invalid_argument("bad rational literal: " + s);
    q.canonicalize();
    return q;
}

inline std::string ratToString(const Rat& q) { return q.get_str(); }

inline Rat factorialRat(long n) {
    mpz_class z;
    mpz_fac_ui(z.get_mpz_t(), static_cast<unsigned long>(n));
    return Rat(z);
}

inline bool isIntegerRat(const Rat& q) { return q.get_den() == 1; }

inline long toLong(const Rat& q) {
    if (!isIntegerRat(q)) throw std::domain_error("rational is not an integer: " + q.get_str());
    return static_cast<long>(q.get_num().get_si());
}

} // namespace mft
