#pragma once

#include <string>
#include <vector>

#include "mwrank/polynomial.hpp"
#include "mwrank/solver.hpp"

namespace mw {

// (z0, z1, z2) with unit weights.
WeightSystem base_ring();
// (x, y, z0, z1, z2) with weights (2n, 3n, 1, 1, 1).
WeightSystem ambient_ring(int n);

struct WeierstrassModel {
    int n = 1;
    Polynomial P{base_ring()};
    Polynomial Q{base_ring()};
};

struct MinimalityResult {
    bool minimal = true;
    // Product of the curves along which P vanishes to order >= 4 and Q to order >= 6.
    Polynomial witness{base_ring()};
};

// Exact: compares the loci of order >= 4 in P and >= 6 in Q using repeated
// gcds with partials, so no factorization is needed.
MinimalityResult check_minimality(const Polynomial& P, const Polynomial& Q);

// Validates degrees, nondegeneracy and minimality.
WeierstrassModel make_model(int n, Polynomial P, Polynomial Q);

// -y^2 + x^3 + P x + Q in the ambient ring.
Polynomial defining_polynomial(const WeierstrassModel& m);

struct DiscriminantData {
    Polynomial delta{base_ring()};
    Polynomial delta1{base_ring()};  // reduced curve
    Polynomial common{base_ring()};  // gcd(P, delta1)
};

DiscriminantData discriminant(const WeierstrassModel& m);

enum class PointKind { DeltaSingular, Q1, Q2, Excluded, UserDeclared };
const char* point_kind_name(PointKind k);

struct CandidatePoint {
    std::vector<Q> base;   // first nonzero coordinate is 1
    PointKind kind = PointKind::DeltaSingular;
    std::vector<Q> fiber;  // (x, y, z0, z1, z2)
};

struct UnresolvedLocus {
    std::string source;
    std::string description;
};

struct CandidateSet {
    std::vector<CandidatePoint> points;    // sorted by base coordinates
    std::vector<CandidatePoint> excluded;  // rational points removed by the double-point test
    std::vector<UnresolvedLocus> unresolved;
};

CandidateSet candidate_points(const WeierstrassModel& m, const DiscriminantData& dd);

// Scales so the first nonzero coordinate is 1.
std::vector<Q> normalize_point(std::vector<Q> p);
// "(1:0:-1/2)".
std::string format_point(const std::vector<Q>& p);

struct FiberPoint {
    Q x, y;
};

// The singular point of y^2 = x^3 + a x + b, which must have 4a^3 + 27b^2 = 0.
FiberPoint fiber_singular_point(const Q& a, const Q& b);
// Fiber point over q on Y, as (x, y, z0, z1, z2) with q normalized.
std::vector<Q> fiber_singular_point(const WeierstrassModel& m, const std::vector<Q>& q);

struct FiberType {
    std::string kodaira;      // "I0", "I3", "I2*", "II", ...
    std::string transversal;  // "A2", "D6", "E8" or "none"
};

// Kodaira type from the vanishing orders of P, Q and the discriminant along
// a curve. Throws Minimality when a >= 4 and b >= 6, Hypothesis when the
// triple is inconsistent.
FiberType tate_fiber_type(int a, int b, int delta);

}  // namespace mw
