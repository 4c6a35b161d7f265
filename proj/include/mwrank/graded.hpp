#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mwrank/linalg.hpp"
#include "mwrank/polynomial.hpp"

namespace mw {

// Monomials of one weighted degree, ascending in the canonical order.
class GradedBasis {
public:
    GradedBasis(const WeightSystem& ws, long degree);

    const WeightSystem& ring() const { return ws_; }
    long degree() const { return degree_; }
    std::size_t size() const { return monomials_.size(); }
    const std::vector<Monomial>& monomials() const { return monomials_; }
    const Monomial& operator[](std::size_t i) const { return monomials_[i]; }
    std::optional<std::size_t> index_of(const Monomial& m) const;

    // Coordinates of a polynomial whose terms all have this degree.
    SparseVec coordinates(const Polynomial& p) const;
    Polynomial polynomial(const SparseVec& v) const;

private:
    WeightSystem ws_;
    long degree_;
    std::vector<Monomial> monomials_;
    std::map<Monomial, std::size_t> index_;
};

class JacobianRing {
public:
    // Throws UndefinedDegree on zero, Hypothesis on inhomogeneous f.
    explicit JacobianRing(Polynomial f);

    const Polynomial& f() const { return f_; }
    const WeightSystem& ring() const { return f_.ring(); }
    long degree() const { return d_; }
    const std::vector<Polynomial>& partials() const { return partials_; }
    // d - w_i for each variable.
    long partial_degree(std::size_t i) const { return d_ - ring().weight(i); }

private:
    Polynomial f_;
    long d_;
    std::vector<Polynomial> partials_;
};

// Rows spanning the degree-k piece of the Jacobian ideal, in the frame of
// GradedBasis(ring, k).
std::vector<SparseVec> jacobian_ideal_piece(const JacobianRing& J, long k);

// R_k, optionally divided further by homogeneous extra generators.
class GradedQuotient {
public:
    GradedQuotient(const JacobianRing& J, long k, const std::vector<Polynomial>& extra = {});

    long degree() const { return basis_.degree(); }
    const GradedBasis& basis() const { return basis_; }
    std::size_t dim() const { return reps_.size(); }
    std::size_t ideal_rank() const { return echelon_.rank(); }
    const std::vector<Monomial>& representatives() const { return reps_; }
    // Coordinates over representatives(); p must be zero or of degree k.
    std::vector<Q> normal_form(const Polynomial& p) const;
    Polynomial reduce(const Polynomial& p) const;

private:
    GradedBasis basis_;
    Echelon echelon_;
    std::vector<std::size_t> free_;
    std::vector<Monomial> reps_;
};

struct HilbertSeries {
    std::vector<long> coefficients;  // index k -> dim R_k
    long sigma = 0;                  // sum of (d - 2 w_i)
    std::vector<std::string> warnings;

    long coefficient(long k) const {
        return k >= 0 && k < long(coefficients.size()) ? coefficients[k] : 0;
    }
    long total() const;
    std::string to_string() const;  // "1 + 2t + 4t^2 + ..."
};

// Product of (t^{d-w_i} - 1)/(t^{w_i} - 1), by exact division.
HilbertSeries hilbert_series_regular(const std::vector<int>& weights, long d);
long milnor_number(const std::vector<int>& weights, long d);

struct QuasismoothCertificate {
    bool quasismooth = false;
    std::string reason;
    // (k, dim R_k) computed by linear algebra over the checked window.
    std::vector<std::pair<long, long>> dims;
};

// Compares linear-algebra dims of R_k with the product formula for every
// k <= sigma + max w_i. Agreement proves the partials form a regular sequence.
QuasismoothCertificate quasismooth_check(const JacobianRing& J);

enum class HodgeMethod { ProductFormula, LinearAlgebra };

struct PrimitiveHodge {
    int dimension = 0;        // of the hypersurface
    std::vector<long> h;      // h[k-1] = dim R_{kd-w}, k = 1..dimension+1
    long middle() const;      // sum of h
    long euler_characteristic() const;
};

// Throws NotQuasismooth when the certificate fails.
PrimitiveHodge gs_hodge_numbers(const JacobianRing& J, HodgeMethod method);

// R~ = R / (lifts). Lifts must be homogeneous of degree 2d - w.
class TildeQuotient {
public:
    TildeQuotient(JacobianRing J, std::vector<Polynomial> lifts);

    const JacobianRing& jacobian() const { return J_; }
    const std::vector<Polynomial>& lifts() const { return lifts_; }
    GradedQuotient piece(long k) const { return GradedQuotient(J_, k, lifts_); }

private:
    JacobianRing J_;
    std::vector<Polynomial> lifts_;
};

}  // namespace mw
