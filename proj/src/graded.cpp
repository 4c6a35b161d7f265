#include "mwrank/graded.hpp"

#include <algorithm>
#include <sstream>

#include "mwrank/errors.hpp"
#include "mwrank/upoly.hpp"

namespace mw {

GradedBasis::GradedBasis(const WeightSystem& ws, long degree) : ws_(ws), degree_(degree) {
    if (degree >= 0) monomials_ = monomial_basis(ws, degree);
    std::sort(monomials_.begin(), monomials_.end(),
              [&](const Monomial& a, const Monomial& b) { return canonical_less(a, b, ws_); });
    for (std::size_t i = 0; i < monomials_.size(); ++i) index_.emplace(monomials_[i], i);
}

std::optional<std::size_t> GradedBasis::index_of(const Monomial& m) const {
    auto it = index_.find(m);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

SparseVec GradedBasis::coordinates(const Polynomial& p) const {
    SparseVec v;
    for (const auto& [m, c] : p.terms()) {
        auto i = index_of(m);
        if (!i) throw Error(ErrorKind::Internal, "term " + render_monomial(m, ws_) + " is not of degree " +
                                                     std::to_string(degree_));
        v.emplace_back(*i, c);
    }
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return v;
}

Polynomial GradedBasis::polynomial(const SparseVec& v) const {
    Polynomial p(ws_);
    for (const auto& [i, c] : v) p.add_term(monomials_.at(i), c);
    return p;
}

JacobianRing::JacobianRing(Polynomial f) : f_(std::move(f)) {
    WeightedDegree wd = weighted_degree(f_);
    if (!wd.homogeneous)
        throw Error(ErrorKind::Hypothesis, "Jacobian ring needs a weighted homogeneous polynomial, got " + render(f_));
    d_ = wd.degree;
    for (std::size_t i = 0; i < f_.ring().size(); ++i) partials_.push_back(partial_derivative(f_, i));
}

namespace {

// Rows m * g for all monomials m of degree k - deg g, in the frame of `basis`.
void multiples(const Polynomial& g, long gdeg, const GradedBasis& basis, std::vector<SparseVec>& rows) {
    if (g.is_zero()) return;
    long k = basis.degree();
    if (k - gdeg < 0) return;
    for (const auto& m : monomial_basis(basis.ring(), k - gdeg)) {
        SparseVec row;
        row.reserve(g.size());
        for (const auto& [gm, c] : g.terms()) {
            Monomial prod = gm;
            for (std::size_t i = 0; i < prod.size(); ++i) prod[i] += m[i];
            row.emplace_back(*basis.index_of(prod), c);
        }
        std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        rows.push_back(std::move(row));
    }
}

}  // namespace

std::vector<SparseVec> jacobian_ideal_piece(const JacobianRing& J, long k) {
    GradedBasis basis(J.ring(), k);
    std::vector<SparseVec> rows;
    for (std::size_t i = 0; i < J.partials().size(); ++i) multiples(J.partials()[i], J.partial_degree(i), basis, rows);
    return rows;
}

GradedQuotient::GradedQuotient(const JacobianRing& J, long k, const std::vector<Polynomial>& extra)
    : basis_(J.ring(), k), echelon_(basis_.size()) {
    std::vector<SparseVec> rows;
    for (std::size_t i = 0; i < J.partials().size(); ++i)
        multiples(J.partials()[i], J.partial_degree(i), basis_, rows);
    for (const auto& h : extra) {
        if (h.is_zero()) continue;
        WeightedDegree wd = weighted_degree(h);
        if (!wd.homogeneous) throw Error(ErrorKind::Hypothesis, "extra generator is not homogeneous: " + render(h));
        multiples(h, wd.degree, basis_, rows);
    }
    for (const auto& r : rows) {
        echelon_.insert(r);
        if (echelon_.rank() == basis_.size()) break;
    }
    free_ = echelon_.free_columns();
    for (auto c : free_) reps_.push_back(basis_[c]);
}

std::vector<Q> GradedQuotient::normal_form(const Polynomial& p) const {
    std::vector<Q> out(free_.size(), Q(0));
    if (p.is_zero()) return out;
    SparseVec r = echelon_.reduce(basis_.coordinates(p));
    for (const auto& [c, q] : r) {
        auto it = std::lower_bound(free_.begin(), free_.end(), c);
        out[it - free_.begin()] = q;
    }
    return out;
}

Polynomial GradedQuotient::reduce(const Polynomial& p) const {
    if (p.is_zero()) return Polynomial(basis_.ring());
    return basis_.polynomial(echelon_.reduce(basis_.coordinates(p)));
}

long HilbertSeries::total() const {
    long s = 0;
    for (long c : coefficients) s += c;
    return s;
}

std::string HilbertSeries::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < coefficients.size(); ++k) {
        long c = coefficients[k];
        if (c == 0) continue;
        if (!first) os << " + ";
        first = false;
        if (k == 0 || c != 1) os << c;
        if (k >= 1) os << "t";
        if (k >= 2) os << "^" << k;
    }
    if (first) os << "0";
    return os.str();
}

HilbertSeries hilbert_series_regular(const std::vector<int>& weights, long d) {
    HilbertSeries hs;
    UPoly num = UPoly::constant(1), den = UPoly::constant(1);
    for (int w : weights) {
        if (w < 1) throw Error(ErrorKind::Hypothesis, "weights must be positive");
        if (w >= d)
            throw Error(ErrorKind::Hypothesis,
                        "weight " + std::to_string(w) + " is not below the degree " + std::to_string(d));
        if (d % w != 0)
            hs.warnings.push_back("weight " + std::to_string(w) + " does not divide the degree " + std::to_string(d));
        std::vector<Q> a(d - w + 1, Q(0)), b(w + 1, Q(0));
        a.back() = 1;
        a.front() = -1;
        b.back() = 1;
        b.front() = -1;
        num = num * UPoly(a);
        den = den * UPoly(b);
        hs.sigma += d - 2 * w;
    }
    UPoly q, r;
    divmod(num, den, q, r);
    if (!r.is_zero()) throw Error(ErrorKind::Hypothesis, "product formula does not give a polynomial");
    for (const auto& c : q.coeffs()) {
        if (c.get_den() != 1 || c < 0 || !c.get_num().fits_slong_p())
            throw Error(ErrorKind::Hypothesis, "product formula gives a non-integral coefficient");
        hs.coefficients.push_back(c.get_num().get_si());
    }
    return hs;
}

long milnor_number(const std::vector<int>& weights, long d) { return hilbert_series_regular(weights, d).total(); }

QuasismoothCertificate quasismooth_check(const JacobianRing& J) {
    QuasismoothCertificate cert;
    HilbertSeries hs;
    try {
        hs = hilbert_series_regular(J.ring().weights(), J.degree());
    } catch (const Error& e) {
        cert.reason = e.what();
        return cert;
    }
    int maxw = *std::max_element(J.ring().weights().begin(), J.ring().weights().end());
    for (long k = 0; k <= hs.sigma + maxw; ++k) {
        long dim = long(GradedQuotient(J, k).dim());
        cert.dims.emplace_back(k, dim);
        if (dim != hs.coefficient(k)) {
            cert.reason = "dim R_" + std::to_string(k) + " = " + std::to_string(dim) + " but the product formula gives " +
                          std::to_string(hs.coefficient(k));
            return cert;
        }
    }
    cert.quasismooth = true;
    cert.reason = "dim R_k agrees with the product formula for k <= " + std::to_string(hs.sigma + maxw);
    return cert;
}

long PrimitiveHodge::middle() const {
    long s = 0;
    for (long x : h) s += x;
    return s;
}

long PrimitiveHodge::euler_characteristic() const {
    // Lefschetz: one class in each even degree 0..2N, primitive part in degree N.
    long e = dimension + 1;
    return dimension % 2 ? e - middle() : e + middle();
}

PrimitiveHodge gs_hodge_numbers(const JacobianRing& J, HodgeMethod method) {
    if (J.ring().size() < 2) throw Error(ErrorKind::Hypothesis, "need at least two variables");
    QuasismoothCertificate cert = quasismooth_check(J);
    if (!cert.quasismooth) throw Error(ErrorKind::NotQuasismooth, cert.reason);
    PrimitiveHodge out;
    out.dimension = int(J.ring().size()) - 2;
    const long d = J.degree(), w = J.ring().total();
    HilbertSeries hs;
    if (method == HodgeMethod::ProductFormula) hs = hilbert_series_regular(J.ring().weights(), d);
    for (int k = 1; k <= out.dimension + 1; ++k) {
        long deg = k * d - w;
        out.h.push_back(method == HodgeMethod::ProductFormula ? hs.coefficient(deg)
                                                              : long(GradedQuotient(J, deg).dim()));
    }
    return out;
}

TildeQuotient::TildeQuotient(JacobianRing J, std::vector<Polynomial> lifts) : J_(std::move(J)), lifts_(std::move(lifts)) {
    const long target = 2 * J_.degree() - J_.ring().total();
    for (const auto& h : lifts_) {
        if (h.ring() != J_.ring()) throw Error(ErrorKind::Context, "lift lives in a different ring");
        if (h.is_zero()) throw Error(ErrorKind::Dossier, "zero lift");
        WeightedDegree wd = weighted_degree(h);
        if (!wd.homogeneous || wd.degree != target)
            throw Error(ErrorKind::Dossier,
                        "lift " + render(h) + " is not homogeneous of degree " + std::to_string(target));
    }
}

}  // namespace mw
