#pragma once

#include <string>
#include <vector>

#include "mwrank/linalg.hpp"
#include "mwrank/polynomial.hpp"

namespace mw {

// Milnor algebra O/(dg) of a polynomial germ at the origin, computed in the
// jet space modulo m^N. N grows until dim O/(J + m^N) stops changing; at that
// point m^N lies in J and the truncation is exact.
class LocalMilnorAlgebra {
public:
    // Throws NotSingular if g(0) != 0 or dg(0) != 0, Unsupported if the
    // singularity is not isolated within max_order.
    explicit LocalMilnorAlgebra(const Polynomial& g, int max_order = 40);

    std::size_t mu() const { return basis_.size(); }
    int order() const { return order_; }
    // Monomial basis, ascending total degree.
    const std::vector<Monomial>& basis() const { return basis_; }
    // Image of a germ in the algebra, in the coordinates of basis().
    std::vector<Q> coordinates(const Polynomial& h) const;

private:
    WeightSystem unit_;
    int order_ = 0;
    std::vector<Monomial> columns_;  // total degree descending
    std::map<Monomial, std::size_t> index_;
    Echelon echelon_{0};
    std::vector<Monomial> basis_;
    std::vector<std::size_t> basis_cols_;
};

struct AdeType {
    bool simple = false;
    char series = '?';  // 'A', 'D', 'E'
    int index = 0;
    std::string name() const;  // "A2", "E6", "not simple"
};

// Classifies a germ with Milnor number mu via the corank of the Hessian and
// the cubic part on its kernel.
AdeType classify_ade(const Polynomial& g, std::size_t mu);

}  // namespace mw
