#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace mw {

using Q = mpq_class;
using Z = mpz_class;

// "3/2", "-1", "0". Denominator omitted when it is 1.
std::string to_string(const Q& q);
std::string to_string(const Z& z);

// Accepts "a" or "a/b" with optional sign; throws Error(Parse) otherwise.
Q parse_rational(std::string_view s);

inline Q make_q(long num, long den = 1) {
    Q q(num, den);
    q.canonicalize();
    return q;
}

}  // namespace mw
