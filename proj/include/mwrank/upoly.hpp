#pragma once

#include <string>
#include <vector>

#include "mwrank/rational.hpp"

namespace mw {

// Dense univariate polynomial over Q; c[i] is the coefficient of x^i.
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(std::vector<Q> coeffs);
    static UPoly constant(const Q& c);
    static UPoly x();
    static UPoly linear_root(const Q& r);  // x - r

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Q>& coeffs() const { return c_; }
    Q coeff(int i) const { return i >= 0 && i <= degree() ? c_[i] : Q(0); }
    Q lc() const { return c_.empty() ? Q(0) : c_.back(); }

    Q eval(const Q& t) const;
    UPoly derivative() const;
    UPoly monic() const;
    // Integer coefficients, content 1, positive leading coefficient.
    UPoly primitive() const;

    UPoly operator-() const;
    bool operator==(const UPoly& o) const { return c_ == o.c_; }
    bool operator!=(const UPoly& o) const { return c_ != o.c_; }

    std::string to_string(const std::string& var = "x") const;

private:
    void trim();
    std::vector<Q> c_;
};

UPoly operator+(const UPoly& a, const UPoly& b);
UPoly operator-(const UPoly& a, const UPoly& b);
UPoly operator*(const UPoly& a, const UPoly& b);
UPoly operator*(const Q& s, const UPoly& a);

void divmod(const UPoly& a, const UPoly& b, UPoly& quot, UPoly& rem);
UPoly operator/(const UPoly& a, const UPoly& b);  // quotient
UPoly operator%(const UPoly& a, const UPoly& b);  // remainder

UPoly gcd(const UPoly& a, const UPoly& b);  // monic, or zero
UPoly squarefree_part(const UPoly& a);      // monic
// Distinct rational roots, ascending. Exact, via modular root finding and
// Hensel lifting.
std::vector<Q> rational_roots(const UPoly& a);
// Monic factor of squarefree_part(a) that has no rational roots.
UPoly irrational_part(const UPoly& a);
// Newton interpolation through (xs[i], ys[i]) with distinct xs.
UPoly interpolate(const std::vector<Q>& xs, const std::vector<Q>& ys);

}  // namespace mw
