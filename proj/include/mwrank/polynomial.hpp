#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mwrank/rational.hpp"
#include "mwrank/weights.hpp"

namespace mw {

using Monomial = std::vector<int>;

long weighted_degree(const Monomial& m, const WeightSystem& ws);
long total_degree(const Monomial& m);

// Canonical order: weighted degree first, then lexicographic on the exponent
// vector, both ascending. Graded bases are listed in this order and the
// elimination pivot of a row is its smallest monomial.
bool canonical_less(const Monomial& a, const Monomial& b, const WeightSystem& ws);

class Polynomial {
public:
    // Terms are kept in plain lexicographic order; rendering and the notion of
    // leading term use the canonical order instead.
    using Terms = std::map<Monomial, Q>;

    explicit Polynomial(WeightSystem ws);
    static Polynomial constant(const WeightSystem& ws, const Q& c);
    static Polynomial variable(const WeightSystem& ws, std::size_t i);
    static Polynomial monomial(const WeightSystem& ws, const Monomial& m, const Q& c = Q(1));

    const WeightSystem& ring() const { return ws_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    Q coeff(const Monomial& m) const;
    bool is_constant() const;
    Q constant_term() const;

    // Builder used by the arithmetic; drops zero results.
    void add_term(const Monomial& m, const Q& c);

    // Same terms reinterpreted in another ring with the same variable count.
    Polynomial with_ring(const WeightSystem& ws) const;

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const Q& c);
    Polynomial pow(unsigned e) const;

    bool operator==(const Polynomial& o) const;
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    long max_weighted_degree() const;
    long min_weighted_degree() const;
    int degree_in(std::size_t var) const;
    bool involves(std::size_t var) const { return degree_in(var) > 0; }

    // Largest term in the canonical order.
    std::pair<Monomial, Q> leading_term() const;

    Q evaluate(const std::vector<Q>& point) const;

private:
    WeightSystem ws_;
    Terms terms_;
};

Polynomial operator+(const Polynomial& a, const Polynomial& b);
Polynomial operator-(const Polynomial& a, const Polynomial& b);
Polynomial operator*(const Polynomial& a, const Polynomial& b);
Polynomial operator*(const Q& c, const Polynomial& a);

// Product keeping only terms of weighted degree <= max_degree.
Polynomial mul_truncated(const Polynomial& a, const Polynomial& b, long max_degree);

struct WeightedDegree {
    bool homogeneous = false;
    long degree = 0;  // meaningful only when homogeneous
};

// Throws Error(UndefinedDegree) on the zero polynomial.
WeightedDegree weighted_degree(const Polynomial& f);
Polynomial partial_derivative(const Polynomial& f, std::size_t i);
Polynomial graded_component(const Polynomial& f, long d);
Polynomial substitute(const Polynomial& f, const std::vector<Polynomial>& images);
// Substitution keeping only terms of weighted degree <= max_degree in the target.
Polynomial substitute_truncated(const Polynomial& f, const std::vector<Polynomial>& images,
                                long max_degree);

// All monomials of weighted degree d, ascending in the canonical order.
std::vector<Monomial> monomial_basis(const WeightSystem& ws, long d);

// Exact division; nullopt when b does not divide a.
std::optional<Polynomial> divide_exact(const Polynomial& a, const Polynomial& b);

// Integer coefficients with content 1 and positive leading coefficient.
Polynomial canonical_associate(const Polynomial& f);
Q content(const Polynomial& f);

// Primitive-part recursion on the last variable that occurs.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

// Product of the distinct irreducible factors, canonicalized. Uses all partials,
// so factors free of some variable are handled.
Polynomial squarefree_part(const Polynomial& f);

// Terms in descending canonical order, coefficients as num/den.
std::string render(const Polynomial& f);
std::string render_monomial(const Monomial& m, const WeightSystem& ws);

}  // namespace mw
