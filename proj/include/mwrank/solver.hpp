#pragma once

#include <string>
#include <vector>

#include "mwrank/polynomial.hpp"
#include "mwrank/upoly.hpp"

namespace mw {

// A finite set of points given by the roots of a squarefree R(theta); the
// point over a root has coordinates num[i](theta) / den(theta) in the ambient
// ring the family was built for. den never vanishes at a root of R.
struct PointFamily {
    UPoly R;
    std::vector<UPoly> num;
    UPoly den;

    bool empty() const { return R.degree() <= 0; }
    // G(point) * den^D mod R, D the total degree of G.
    UPoly evaluate(const Polynomial& G) const;
    // Keep only the points where G vanishes / does not vanish.
    void restrict_to_zeros(const Polynomial& G);
    void remove_zeros(const Polynomial& G);
    void remove_common_zeros(const std::vector<Polynomial>& Gs);
    std::vector<std::vector<Q>> rational_points() const;
    // Monic factor of R whose roots are not rational; constant when none.
    UPoly irrational_factor() const;
};

struct ProjectiveSolution {
    bool positive_dimensional = false;
    std::vector<PointFamily> families;
    std::vector<std::vector<Q>> rational_points() const;
    // Product of the irrational factors, with a description per stratum.
    std::vector<std::pair<std::string, UPoly>> unresolved() const;
    std::size_t count_upper_bound() const;
};

// Common zeros of equations in a 3-variable (possibly weighted) ring, viewed
// as a projective plane. Strata: x[c0] != 0, then x[c0]=0,x[c1] != 0, then the
// vertex. Points over Q-bar are represented exactly; only their rationality is
// decided.
ProjectiveSolution solve_projective(const std::vector<Polynomial>& eqs, std::vector<std::size_t> chart_order = {0, 1, 2});

// j-th subresultant coefficients of F1, F2 in the second variable of a
// two-variable ring, as polynomials in the first variable. Exposed for tests.
struct Subresultants {
    UPoly res;  // S0
    UPoly s1;   // coefficient of b in S1
    UPoly s0;   // constant coefficient of S1
};
Subresultants subresultants(const Polynomial& F1, const Polynomial& F2);

}  // namespace mw
