#include "mwrank/linalg.hpp"

#include "mwrank/errors.hpp"

namespace mw {

namespace {

using IntRow = std::vector<std::pair<std::size_t, Z>>;

void make_primitive(IntRow& r) {
    if (r.empty()) return;
    Z g = 0;
    for (const auto& [c, v] : r) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        if (g == 1) break;
    }
    if (r.front().second < 0) g = -g;
    if (g == 1) return;
    for (auto& [c, v] : r) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

IntRow to_int_row(const SparseVec& v) {
    Z l = 1;
    for (const auto& [c, q] : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    IntRow r;
    r.reserve(v.size());
    for (const auto& [c, q] : v) {
        if (q == 0) continue;
        r.emplace_back(c, q.get_num() * (l / q.get_den()));
    }
    make_primitive(r);
    return r;
}

// a*x - b*y, both sorted.
IntRow combine(const Z& a, const IntRow& x, const Z& b, const IntRow& y) {
    IntRow out;
    out.reserve(x.size() + y.size());
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
            out.emplace_back(x[i].first, a * x[i].second);
            ++i;
        } else if (i == x.size() || y[j].first < x[i].first) {
            out.emplace_back(y[j].first, -b * y[j].second);
            ++j;
        } else {
            Z v = a * x[i].second - b * y[j].second;
            if (v != 0) out.emplace_back(x[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace

bool Echelon::insert(const SparseVec& row) {
    IntRow r = to_int_row(row);
    while (!r.empty()) {
        if (r.front().first >= ncols_) throw Error(ErrorKind::Internal, "column index out of range");
        auto it = rows_.find(r.front().first);
        if (it == rows_.end()) {
            rows_.emplace(r.front().first, std::move(r));
            return true;
        }
        const IntRow& p = it->second;
        Z a = p.front().second, b = r.front().second;
        Z g;
        mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        r = combine(a / g, r, b / g, p);
        make_primitive(r);
    }
    return false;
}

std::vector<std::size_t> Echelon::pivots() const {
    std::vector<std::size_t> out;
    for (const auto& [c, r] : rows_) out.push_back(c);
    return out;
}

std::vector<std::size_t> Echelon::free_columns() const {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < ncols_; ++c)
        if (!rows_.count(c)) out.push_back(c);
    return out;
}

SparseVec Echelon::reduce(const SparseVec& v) const {
    std::map<std::size_t, Q> acc;
    for (const auto& [c, q] : v)
        if (q != 0) acc[c] += q;
    auto it = acc.begin();
    while (it != acc.end()) {
        if (it->second == 0) {
            it = acc.erase(it);
            continue;
        }
        auto pr = rows_.find(it->first);
        if (pr == rows_.end()) {
            ++it;
            continue;
        }
        const IntRow& p = pr->second;
        Q f = it->second / Q(p.front().second);
        for (const auto& [c, z] : p) {
            Q& slot = acc[c];
            slot -= f * Q(z);
        }
        it = acc.erase(it);  // pivot entry is now exactly zero
    }
    SparseVec out;
    for (const auto& [c, q] : acc)
        if (q != 0) out.emplace_back(c, q);
    return out;
}

std::size_t matrix_rank(const DenseMatrix& m) {
    if (m.empty()) return 0;
    Echelon e(m.front().size());
    for (const auto& row : m) e.insert(to_sparse(row));
    return e.rank();
}

std::optional<std::vector<Q>> solve_linear(const DenseMatrix& m, std::size_t ncols, const std::vector<Q>& b) {
    DenseMatrix a = m;
    for (std::size_t i = 0; i < a.size(); ++i) a[i].push_back(b[i]);
    std::vector<std::size_t> pivcol;
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols && r < a.size(); ++c) {
        std::size_t p = r;
        while (p < a.size() && a[p][c] == 0) ++p;
        if (p == a.size()) continue;
        std::swap(a[p], a[r]);
        Q inv = 1 / a[r][c];
        for (auto& x : a[r]) x *= inv;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == r || a[i][c] == 0) continue;
            Q f = a[i][c];
            for (std::size_t k = 0; k <= ncols; ++k) a[i][k] -= f * a[r][k];
        }
        pivcol.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < a.size(); ++i)
        if (a[i][ncols] != 0) return std::nullopt;
    std::vector<Q> x(ncols, Q(0));
    for (std::size_t i = 0; i < pivcol.size(); ++i) x[pivcol[i]] = a[i][ncols];
    return x;
}

std::vector<std::vector<Q>> nullspace(const DenseMatrix& m, std::size_t ncols) {
    // Reduced row echelon over Q.
    DenseMatrix a = m;
    std::vector<std::size_t> pivcol;
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols && r < a.size(); ++c) {
        std::size_t p = r;
        while (p < a.size() && a[p][c] == 0) ++p;
        if (p == a.size()) continue;
        std::swap(a[p], a[r]);
        Q inv = 1 / a[r][c];
        for (auto& x : a[r]) x *= inv;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == r || a[i][c] == 0) continue;
            Q f = a[i][c];
            for (std::size_t k = 0; k < ncols; ++k) a[i][k] -= f * a[r][k];
        }
        pivcol.push_back(c);
        ++r;
    }
    std::vector<std::vector<Q>> basis;
    std::vector<bool> is_piv(ncols, false);
    for (auto c : pivcol) is_piv[c] = true;
    for (std::size_t f = 0; f < ncols; ++f) {
        if (is_piv[f]) continue;
        std::vector<Q> v(ncols, Q(0));
        v[f] = 1;
        for (std::size_t i = 0; i < pivcol.size(); ++i) v[pivcol[i]] = -a[i][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

Z determinant(std::vector<std::vector<Z>> m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    Z prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && m[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(m[p], m[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Z t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = m[k][k];
    }
    return sign > 0 ? m[n - 1][n - 1] : Z(-m[n - 1][n - 1]);
}

SparseVec to_sparse(const std::vector<Q>& dense) {
    SparseVec v;
    for (std::size_t i = 0; i < dense.size(); ++i)
        if (dense[i] != 0) v.emplace_back(i, dense[i]);
    return v;
}

}  // namespace mw
