#include "mwrank/local_algebra.hpp"

#include <algorithm>

#include "mwrank/errors.hpp"

namespace mw {

namespace {

WeightSystem unit_copy(const WeightSystem& ws) { return WeightSystem(std::vector<int>(ws.size(), 1), ws.names()); }

long order_of(const Polynomial& p) {
    long o = -1;
    for (const auto& [m, c] : p.terms()) {
        long t = total_degree(m);
        if (o < 0 || t < o) o = t;
    }
    return o;
}

struct Jet {
    std::vector<Monomial> columns;
    std::map<Monomial, std::size_t> index;
    Echelon echelon{0};
};

Jet build(const std::vector<Polynomial>& partials, const WeightSystem& unit, int N) {
    Jet j;
    for (int deg = N - 1; deg >= 0; --deg) {
        auto ms = monomial_basis(unit, deg);
        for (auto it = ms.rbegin(); it != ms.rend(); ++it) j.columns.push_back(*it);
    }
    for (std::size_t i = 0; i < j.columns.size(); ++i) j.index.emplace(j.columns[i], i);
    j.echelon = Echelon(j.columns.size());
    for (const auto& p : partials) {
        long o = order_of(p);
        if (o < 0) continue;
        for (const auto& m : j.columns) {
            if (total_degree(m) + o >= N) continue;
            SparseVec row;
            for (const auto& [pm, c] : p.terms()) {
                Monomial prod = pm;
                for (std::size_t i = 0; i < prod.size(); ++i) prod[i] += m[i];
                if (total_degree(prod) >= N) continue;
                row.emplace_back(j.index.at(prod), c);
            }
            std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
            j.echelon.insert(row);
        }
    }
    return j;
}

}  // namespace

LocalMilnorAlgebra::LocalMilnorAlgebra(const Polynomial& gin, int max_order) : unit_(unit_copy(gin.ring())) {
    Polynomial g = gin.with_ring(unit_);
    if (g.constant_term() != 0) throw Error(ErrorKind::NotSingular, "germ does not vanish at the origin");
    std::vector<Polynomial> partials;
    for (std::size_t i = 0; i < unit_.size(); ++i) {
        partials.push_back(partial_derivative(g, i));
        if (partials.back().constant_term() != 0) throw Error(ErrorKind::NotSingular, "germ is smooth at the origin");
    }
    std::size_t prev = 0;
    for (int N = 1; N <= max_order; ++N) {
        Jet j = build(partials, unit_, N);
        std::size_t dim = j.columns.size() - j.echelon.rank();
        if (N > 1 && dim == prev) {
            order_ = N;
            columns_ = std::move(j.columns);
            index_ = std::move(j.index);
            echelon_ = std::move(j.echelon);
            auto free = echelon_.free_columns();
            std::reverse(free.begin(), free.end());
            basis_cols_ = free;
            for (auto c : free) basis_.push_back(columns_[c]);
            return;
        }
        prev = dim;
    }
    throw Error(ErrorKind::Unsupported, "singularity is not isolated (Milnor algebra unstable up to order " +
                                            std::to_string(max_order) + ")");
}

std::vector<Q> LocalMilnorAlgebra::coordinates(const Polynomial& hin) const {
    std::vector<Q> out(basis_.size(), Q(0));
    SparseVec v;
    for (const auto& [m, c] : hin.terms()) {
        if (total_degree(m) >= order_) continue;
        v.emplace_back(index_.at(m), c);
    }
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [c, q] : echelon_.reduce(v)) {
        auto it = std::find(basis_cols_.begin(), basis_cols_.end(), c);
        out[it - basis_cols_.begin()] = q;
    }
    return out;
}

std::string AdeType::name() const {
    if (!simple) return "not simple";
    return std::string(1, series) + std::to_string(index);
}

AdeType classify_ade(const Polynomial& gin, std::size_t mu) {
    const WeightSystem unit = unit_copy(gin.ring());
    Polynomial g = gin.with_ring(unit);
    const std::size_t n = unit.size();
    DenseMatrix H(n, std::vector<Q>(n, Q(0)));
    Polynomial cubic(unit);
    for (const auto& [m, c] : g.terms()) {
        long t = total_degree(m);
        if (t < 2) throw Error(ErrorKind::NotSingular, "germ has a nonzero term of order < 2");
        if (t == 3) cubic.add_term(m, c);
        if (t != 2) continue;
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < n; ++i)
            for (int e = 0; e < m[i]; ++e) idx.push_back(i);
        if (idx[0] == idx[1]) {
            H[idx[0]][idx[0]] = 2 * c;
        } else {
            H[idx[0]][idx[1]] = c;
            H[idx[1]][idx[0]] = c;
        }
    }
    std::size_t corank = n - matrix_rank(H);
    AdeType t;
    if (corank == 0) {
        t = {true, 'A', 1};
    } else if (corank == 1) {
        t = {true, 'A', int(mu)};
    } else if (corank == 2) {
        auto K = nullspace(H, n);
        WeightSystem ab = WeightSystem::unit({"a", "b"});
        Polynomial a = Polynomial::variable(ab, 0), b = Polynomial::variable(ab, 1);
        std::vector<Polynomial> images;
        for (std::size_t i = 0; i < n; ++i) images.push_back(K[0][i] * a + K[1][i] * b);
        Polynomial C = substitute(cubic, images);
        if (C.is_zero()) return t;
        Polynomial hess = partial_derivative(partial_derivative(C, 0), 0) * partial_derivative(partial_derivative(C, 1), 1) -
                          partial_derivative(partial_derivative(C, 0), 1).pow(2);
        if (hess.is_zero()) {
            if (mu >= 6 && mu <= 8) t = {true, 'E', int(mu)};
        } else {
            t = {true, 'D', int(mu)};
        }
    }
    return t;
}

}  // namespace mw
