#include "mwrank/solver.hpp"

#include <algorithm>

#include "mwrank/errors.hpp"
#include "mwrank/linalg.hpp"

namespace mw {

namespace {

UPoly mulmod(const UPoly& a, const UPoly& b, const UPoly& m) { return (a * b) % m; }

// Coefficients of f as a polynomial in variable v, each evaluated into a
// univariate polynomial in variable u (f must involve only u and v).
std::vector<UPoly> coeffs_in(const Polynomial& f, std::size_t u, std::size_t v) {
    std::vector<std::vector<Q>> raw(f.degree_in(v) + 1);
    for (const auto& [m, c] : f.terms()) {
        auto& slot = raw[m[v]];
        if (int(slot.size()) <= m[u]) slot.resize(m[u] + 1);
        slot[m[u]] += c;
    }
    std::vector<UPoly> out;
    for (auto& r : raw) out.emplace_back(std::move(r));
    return out;
}

long total_deg(const Polynomial& f) {
    long d = 0;
    for (const auto& [m, c] : f.terms()) d = std::max(d, total_degree(m));
    return d;
}

// Determinant of the (k x k) Sylvester-type matrix evaluated at a = t.
Z sylvester_minor(const std::vector<std::vector<Z>>& A, const std::vector<std::vector<Z>>& B, int m, int n,
                  int j, int i) {
    // A: coefficients of F1 (degree m in b) evaluated; index = power of b.
    const int size = m + n - 2 * j;
    std::vector<std::vector<Z>> M(size, std::vector<Z>(size, Z(0)));
    int row = 0;
    auto fill = [&](const std::vector<Z>& coef, int deg, int shift) {
        // polynomial b^shift * F, columns are powers m+n-j-1 down to j+1, then b^i.
        for (int col = 0; col < size - 1; ++col) {
            int power = m + n - j - 1 - col;
            int k = power - shift;
            if (k >= 0 && k <= deg) M[row][col] = coef[k];
        }
        int k = i - shift;
        if (k >= 0 && k <= deg) M[row][size - 1] = coef[k];
        ++row;
    };
    for (int s = n - j - 1; s >= 0; --s) fill(A[0], m, s);
    for (int s = m - j - 1; s >= 0; --s) fill(B[0], n, s);
    return determinant(std::move(M));
}

}  // namespace

namespace {

// Subresultant coefficients of two polynomials in b with constant leading
// coefficients, evaluated at integer points of a and interpolated.
class SubresultantChain {
public:
    SubresultantChain(const Polynomial& F1in, const Polynomial& F2in)
        : F1_(canonical_associate(F1in)), F2_(canonical_associate(F2in)) {
        if (F1_.ring().size() != 2) throw Error(ErrorKind::Internal, "subresultants need a two-variable ring");
        if (F1_.degree_in(1) < F2_.degree_in(1)) std::swap(F1_, F2_);
        m_ = F1_.degree_in(1);
        n_ = F2_.degree_in(1);
        if (n_ < 1) throw Error(ErrorKind::Internal, "subresultants need positive degree");
        c1_ = coeffs_in(F1_, 0, 1);
        c2_ = coeffs_in(F2_, 0, 1);
        if (c1_.back().degree() != 0 || c2_.back().degree() != 0)
            throw Error(ErrorKind::Internal, "subresultants need constant leading coefficients");
        D1_ = total_deg(F1_);
        D2_ = total_deg(F2_);
    }

    int n() const { return n_; }

    // Coefficients s_{j,0}, ..., s_{j,j} of S_j. For j = n this is F2 itself,
    // which is proportional to the fiber gcd when that has degree n.
    std::vector<UPoly> row(int j) const {
        if (j == n_) return c2_;
        // Bezout bounds the resultant; the minors of higher rows are bounded
        // by their expansion along the Sylvester rows.
        long bound = j == 0 ? D1_ * D2_ : long(n_ - j) * D1_ + long(m_ - j) * D2_;
        std::vector<Q> xs;
        std::vector<std::vector<Q>> ys(j + 1);
        for (long k = 0; k <= bound; ++k) {
            Q t(k - bound / 2);
            std::vector<Z> a, b;
            for (const auto& c : c1_) a.push_back(c.eval(t).get_num());
            for (const auto& c : c2_) b.push_back(c.eval(t).get_num());
            xs.push_back(t);
            for (int i = 0; i <= j; ++i) ys[i].emplace_back(sylvester_minor({a}, {b}, m_, n_, j, i));
        }
        std::vector<UPoly> out;
        for (int i = 0; i <= j; ++i) out.push_back(interpolate(xs, ys[i]));
        return out;
    }

private:
    Polynomial F1_, F2_;
    int m_ = 0, n_ = 0;
    long D1_ = 0, D2_ = 0;
    std::vector<UPoly> c1_, c2_;
};

}  // namespace

Subresultants subresultants(const Polynomial& F1, const Polynomial& F2) {
    SubresultantChain chain(F1, F2);
    Subresultants out;
    out.res = chain.row(0)[0];
    auto r1 = chain.row(1);
    out.s1 = r1[1];
    out.s0 = r1[0];
    return out;
}

UPoly PointFamily::evaluate(const Polynomial& G) const {
    if (G.is_zero()) return UPoly();
    long D = total_deg(G);
    std::vector<std::vector<UPoly>> pw(num.size());
    std::vector<UPoly> dpw;
    auto power = [&](std::vector<UPoly>& cache, const UPoly& base, int e) -> const UPoly& {
        if (cache.empty()) cache.push_back(UPoly::constant(1) % R);
        while (int(cache.size()) <= e) cache.push_back(mulmod(cache.back(), base, R));
        return cache[e];
    };
    UPoly acc;
    for (const auto& [m, c] : G.terms()) {
        UPoly t = UPoly::constant(c);
        for (std::size_t i = 0; i < m.size(); ++i)
            if (m[i]) t = mulmod(t, power(pw[i], num[i], m[i]), R);
        t = mulmod(t, power(dpw, den, int(D - total_degree(m))), R);
        acc = acc + t;
    }
    return acc % R;
}

void PointFamily::restrict_to_zeros(const Polynomial& G) {
    if (empty()) return;
    UPoly v = evaluate(G);
    if (v.is_zero()) return;
    R = gcd(R, v);
}

void PointFamily::remove_zeros(const Polynomial& G) {
    if (empty()) return;
    UPoly v = evaluate(G);
    if (v.is_zero()) {
        R = UPoly::constant(1);
        return;
    }
    R = (R / gcd(R, v)).monic();
}

void PointFamily::remove_common_zeros(const std::vector<Polynomial>& Gs) {
    if (empty()) return;
    UPoly common = R;
    for (const auto& G : Gs) {
        UPoly v = evaluate(G);
        if (!v.is_zero()) common = gcd(common, v);
    }
    R = (R / common).monic();
}

std::vector<std::vector<Q>> PointFamily::rational_points() const {
    std::vector<std::vector<Q>> out;
    if (empty()) return out;
    for (const auto& t : rational_roots(R)) {
        Q d = den.eval(t);
        std::vector<Q> p;
        for (const auto& nu : num) p.push_back(nu.eval(t) / d);
        out.push_back(std::move(p));
    }
    return out;
}

UPoly PointFamily::irrational_factor() const {
    if (empty()) return UPoly::constant(1);
    return irrational_part(R);
}

std::vector<std::vector<Q>> ProjectiveSolution::rational_points() const {
    std::vector<std::vector<Q>> out;
    for (const auto& f : families)
        for (auto& p : f.rational_points()) out.push_back(std::move(p));
    return out;
}

std::vector<std::pair<std::string, UPoly>> ProjectiveSolution::unresolved() const {
    std::vector<std::pair<std::string, UPoly>> out;
    for (std::size_t i = 0; i < families.size(); ++i) {
        UPoly f = families[i].irrational_factor();
        if (f.degree() > 0) out.emplace_back("stratum " + std::to_string(i), f);
    }
    return out;
}

std::size_t ProjectiveSolution::count_upper_bound() const {
    std::size_t n = 0;
    for (const auto& f : families) n += std::max(0, f.R.degree());
    return n;
}

namespace {

std::vector<Q> binomials(int j) {
    std::vector<Q> c(j + 1, Q(1));
    for (int i = 1; i <= j; ++i) c[i] = c[i - 1] * (j - i + 1) / i;
    return c;
}

// Affine common zeros in the two-variable ring (a, b), one family per
// multiplicity class of the fiber gcd. Coordinates are (a, b). Returns false
// when the zero set is a curve.
bool solve_affine2(const std::vector<Polynomial>& eqs_in, std::vector<PointFamily>& out) {
    std::vector<Polynomial> eqs;
    for (const auto& e : eqs_in)
        if (!e.is_zero()) eqs.push_back(canonical_associate(e));
    const WeightSystem& ring = eqs_in.front().ring();
    if (eqs.empty()) return false;
    for (const auto& e : eqs)
        if (e.is_constant()) return true;
    Polynomial G = eqs.front();
    for (std::size_t i = 1; i < eqs.size() && !G.is_constant(); ++i) G = gcd(G, eqs[i]);
    if (!G.is_constant()) return false;

    Polynomial A = Polynomial::variable(ring, 0), B = Polynomial::variable(ring, 1);
    for (int attempt = 0; attempt < 60; ++attempt) {
        int c = (attempt % 2 ? -1 : 1) * ((attempt + 1) / 2);
        // a = a' - c b
        std::vector<Polynomial> images = {A - Q(c) * B, B};
        std::vector<Polynomial> sh;
        for (const auto& e : eqs) sh.push_back(substitute(e, images));
        Polynomial F1(ring), F2(ring), F3(ring);
        for (std::size_t i = 0; i < sh.size(); ++i) {
            long k = long(i);
            F1 += Q(k + 1 + attempt / 7) * sh[i];
            F2 += Q(((i % 2) ? -1L : 1L) * (2 * k + 1 + attempt / 5)) * sh[i];
            F3 += Q((k + 1) * (k + 1) + 3 * (attempt / 3) - ((i % 3) ? 0 : 4)) * sh[i];
        }
        auto usable = [](const Polynomial& F) {
            if (F.is_zero() || F.degree_in(1) == 0) return false;
            return coeffs_in(F, 0, 1).back().degree() == 0;
        };
        if (!usable(F1) || !usable(F2)) continue;
        SubresultantChain chain(F1, F2);
        UPoly res = chain.row(0)[0];
        if (res.is_zero()) continue;
        UPoly roots = squarefree_part(res);
        std::vector<PointFamily> fams;
        bool ok = true;
        // Rational fibers: the gcd over Q of every equation.
        for (const Q& t : rational_roots(roots)) {
            UPoly g;
            for (const auto& e : sh) {
                std::vector<Q> coef;
                for (const auto& cu : coeffs_in(e, 0, 1)) coef.push_back(cu.eval(t));
                UPoly u(coef);
                if (!u.is_zero()) g = g.is_zero() ? u.monic() : gcd(g, u);
            }
            const int j = g.degree();
            if (j < 1) continue;  // only F1 and F2 meet here
            Q b0 = -g.coeff(j - 1) / Q(j);
            UPoly pw = UPoly::constant(1), lin = UPoly::linear_root(b0);
            for (int i = 0; i < j; ++i) pw = pw * lin;
            if (pw != g) {
                ok = false;
                break;
            }
            PointFamily fam;
            fam.R = UPoly::linear_root(t);
            fam.den = UPoly::constant(1);
            fam.num = {UPoly::constant(t - Q(c) * b0), UPoly::constant(b0)};
            fams.push_back(std::move(fam));
        }
        UPoly rest = irrational_part(roots);
        // A second eliminant discards roots where only F1 and F2 meet.
        if (ok && rest.degree() > 0 && sh.size() > 2 && usable(F3)) {
            UPoly res3 = SubresultantChain(F1, F3).row(0)[0];
            if (!res3.is_zero()) rest = gcd(rest, res3);
        }
        for (int j = 1; ok && rest.degree() > 0; ++j) {
            if (j > chain.n()) {
                ok = false;
                break;
            }
            std::vector<UPoly> s = chain.row(j);
            UPoly bad = gcd(rest, s[j]);
            UPoly part = bad.degree() > 0 ? (rest / bad).monic() : rest;
            rest = bad.degree() > 0 ? bad : UPoly::constant(1);
            if (part.degree() <= 0) continue;
            // Fiber gcd is s_jj (b - b0)^j with b0 = -s_{j,j-1} / (j s_jj).
            UPoly den = (Q(j) * s[j]) % part;
            UPoly bnum = s[j - 1] % part;
            auto binom = binomials(j);
            UPoly dpow = UPoly::constant(1), bpow = UPoly::constant(1);
            for (int i = j; i >= 0 && ok; --i) {
                UPoly lhs = (s[i] * dpow) % part, rhs = (binom[i] * s[j] * bpow) % part;
                if (lhs != rhs) ok = false;
                dpow = (dpow * den) % part;
                bpow = (bpow * bnum) % part;
            }
            if (!ok) break;
            PointFamily fam;
            fam.R = part;
            fam.den = den;
            UPoly b = (-bnum) % part;
            fam.num = {(UPoly::x() * den - Q(c) * b) % part, b};
            for (const auto& e : eqs) fam.restrict_to_zeros(e);
            fams.push_back(std::move(fam));
        }
        if (!ok) continue;
        for (auto& f : fams)
            if (!f.empty()) out.push_back(std::move(f));
        return true;
    }
    throw Error(ErrorKind::Internal, "no generic projection found for the affine system");
}

}  // namespace

ProjectiveSolution solve_projective(const std::vector<Polynomial>& eqs, std::vector<std::size_t> order) {
    if (eqs.empty()) throw Error(ErrorKind::Internal, "empty system");
    const WeightSystem& ring = eqs.front().ring();
    if (ring.size() != 3 || order.size() != 3) throw Error(ErrorKind::Internal, "projective solver needs 3 variables");
    ProjectiveSolution sol;
    const std::size_t c0 = order[0], c1 = order[1], c2 = order[2];

    // Stratum x[c0] = 1.
    {
        WeightSystem aff = WeightSystem::unit({"a", "b"});
        Polynomial a = Polynomial::variable(aff, 0), b = Polynomial::variable(aff, 1);
        std::vector<Polynomial> images(3, Polynomial(aff));
        images[c0] = Polynomial::constant(aff, 1);
        images[c1] = a;
        images[c2] = b;
        std::vector<Polynomial> sys;
        for (const auto& e : eqs) sys.push_back(substitute(e, images));
        std::vector<PointFamily> fams2;
        if (!solve_affine2(sys, fams2)) {
            sol.positive_dimensional = true;
            return sol;
        }
        for (auto& f2 : fams2) {
            PointFamily fam;
            fam.R = f2.R;
            fam.den = f2.den;
            fam.num.assign(3, UPoly());
            fam.num[c0] = f2.den;
            fam.num[c1] = f2.num[0];
            fam.num[c2] = f2.num[1];
            sol.families.push_back(std::move(fam));
        }
    }
    // Stratum x[c0] = 0, x[c1] = 1: univariate in x[c2].
    {
        UPoly g;
        bool any = false;
        for (const auto& e : eqs) {
            std::vector<Q> coef;
            for (const auto& [m, c] : e.terms()) {
                if (m[c0] != 0) continue;
                if (int(coef.size()) <= m[c2]) coef.resize(m[c2] + 1);
                coef[m[c2]] += c;
            }
            UPoly u(coef);
            if (u.is_zero()) continue;
            g = any ? gcd(g, u) : u.monic();
            any = true;
        }
        if (!any) {
            sol.positive_dimensional = true;
            return sol;
        }
        PointFamily fam;
        fam.R = squarefree_part(g);
        if (fam.R.degree() < 0) fam.R = UPoly::constant(1);
        fam.den = UPoly::constant(1);
        fam.num.assign(3, UPoly());
        fam.num[c1] = UPoly::constant(1);
        fam.num[c2] = UPoly::x();
        sol.families.push_back(std::move(fam));
    }
    // Vertex x[c2] = 1.
    {
        std::vector<Q> pt(3, Q(0));
        pt[c2] = 1;
        bool all = true;
        for (const auto& e : eqs)
            if (e.evaluate(pt) != 0) all = false;
        PointFamily fam;
        fam.R = all ? UPoly::x() : UPoly::constant(1);
        fam.den = UPoly::constant(1);
        fam.num.assign(3, UPoly());
        fam.num[c2] = UPoly::constant(1);
        sol.families.push_back(std::move(fam));
    }
    return sol;
}

}  // namespace mw
