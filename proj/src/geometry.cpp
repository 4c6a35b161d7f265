#include "mwrank/geometry.hpp"

#include <algorithm>
#include <map>

#include "mwrank/errors.hpp"

namespace mw {

WeightSystem base_ring() {
    static const WeightSystem ws = WeightSystem::unit({"z0", "z1", "z2"});
    return ws;
}

WeightSystem ambient_ring(int n) {
    if (n < 1) throw Error(ErrorKind::Range, "n must be positive");
    return WeightSystem({2 * n, 3 * n, 1, 1, 1}, {"x", "y", "z0", "z1", "z2"});
}

namespace {

Polynomial gcd_with_partials(const Polynomial& G) {
    Polynomial g = G;
    for (std::size_t i = 0; i < G.ring().size() && !g.is_constant(); ++i) {
        Polynomial d = partial_derivative(G, i);
        if (!d.is_zero()) g = gcd(g, d);
    }
    return g;
}

// Product of the components along which F vanishes to order >= k.
Polynomial order_locus(const Polynomial& F, int k) {
    Polynomial G = canonical_associate(F);
    for (int j = 1; j < k && !G.is_constant(); ++j) G = gcd_with_partials(G);
    if (G.is_constant()) return Polynomial::constant(F.ring(), 1);
    return squarefree_part(G);
}

void check_degree(const Polynomial& f, long d, const char* name) {
    if (f.ring() != base_ring()) throw Error(ErrorKind::Context, std::string(name) + " must be a polynomial in z0, z1, z2");
    if (f.is_zero()) return;
    WeightedDegree wd = weighted_degree(f);
    if (!wd.homogeneous || wd.degree != d)
        throw Error(ErrorKind::Hypothesis, std::string(name) + " must be homogeneous of degree " + std::to_string(d));
}

}  // namespace

MinimalityResult check_minimality(const Polynomial& P, const Polynomial& Q) {
    MinimalityResult r;
    if (P.is_zero() && Q.is_zero()) {
        r.minimal = false;
        return r;
    }
    if (P.is_zero()) {
        Polynomial B = order_locus(Q, 6);
        r.minimal = B.is_constant();
        if (!r.minimal) r.witness = B;
        return r;
    }
    if (Q.is_zero()) {
        Polynomial A = order_locus(P, 4);
        r.minimal = A.is_constant();
        if (!r.minimal) r.witness = A;
        return r;
    }
    Polynomial A = order_locus(P, 4);
    if (A.is_constant()) return r;
    Polynomial B = order_locus(Q, 6);
    if (B.is_constant()) return r;
    Polynomial g = gcd(A, B);
    r.minimal = g.is_constant();
    if (!r.minimal) r.witness = g;
    return r;
}

WeierstrassModel make_model(int n, Polynomial P, Polynomial Q) {
    if (n < 1) throw Error(ErrorKind::Range, "n must be positive");
    check_degree(P, 4L * n, "P");
    check_degree(Q, 6L * n, "Q");
    if ((4 * P.pow(3) + 27 * Q.pow(2)).is_zero()) throw Error(ErrorKind::Degenerate, "4P^3 + 27Q^2 vanishes identically");
    MinimalityResult mr = check_minimality(P, Q);
    if (!mr.minimal)
        throw Error(ErrorKind::Minimality, "P vanishes to order >= 4 and Q to order >= 6 along " + render(mr.witness));
    WeierstrassModel m;
    m.n = n;
    m.P = std::move(P);
    m.Q = std::move(Q);
    return m;
}

Polynomial defining_polynomial(const WeierstrassModel& m) {
    WeightSystem A = ambient_ring(m.n);
    Polynomial x = Polynomial::variable(A, 0), y = Polynomial::variable(A, 1);
    std::vector<Polynomial> images = {Polynomial::variable(A, 2), Polynomial::variable(A, 3), Polynomial::variable(A, 4)};
    return -(y * y) + x.pow(3) + substitute(m.P, images) * x + substitute(m.Q, images);
}

DiscriminantData discriminant(const WeierstrassModel& m) {
    DiscriminantData dd;
    dd.delta = 4 * m.P.pow(3) + 27 * m.Q.pow(2);
    if (dd.delta.is_zero()) throw Error(ErrorKind::Degenerate, "4P^3 + 27Q^2 vanishes identically");
    const WeightSystem B = base_ring();
    WeightSystem aff = WeightSystem::unit({"a", "b"});
    Polynomial a = Polynomial::variable(aff, 0), b = Polynomial::variable(aff, 1);
    Polynomial daff = substitute(dd.delta, {Polynomial::constant(aff, 1), a, b});
    Polynomial red(B);
    if (daff.is_constant()) {
        red = Polynomial::constant(B, 1);
    } else {
        Polynomial g = gcd_with_partials(daff);
        Polynomial r = *divide_exact(daff, g);
        long deg = 0;
        for (const auto& [mono, c] : r.terms()) deg = std::max(deg, total_degree(mono));
        for (const auto& [mono, c] : r.terms()) red.add_term({int(deg - total_degree(mono)), mono[0], mono[1]}, c);
    }
    bool z0_divides = std::all_of(dd.delta.terms().begin(), dd.delta.terms().end(),
                                  [](const auto& t) { return t.first[0] > 0; });
    if (z0_divides) red = red * Polynomial::variable(B, 0);
    dd.delta1 = canonical_associate(red);
    dd.common = m.P.is_zero() ? dd.delta1 : gcd(m.P, dd.delta1);
    return dd;
}

const char* point_kind_name(PointKind k) {
    switch (k) {
        case PointKind::DeltaSingular: return "singular point of the reduced discriminant";
        case PointKind::Q1: return "isolated intersection with P = 0";
        case PointKind::Q2: return "point of order >= 3 of P on a double component";
        case PointKind::Excluded: return "isolated double point of the discriminant with P = 0";
        case PointKind::UserDeclared: return "declared";
    }
    return "?";
}

std::string format_point(const std::vector<Q>& p) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ":" : "") + to_string(p[i]);
    return s + ")";
}

std::vector<Q> normalize_point(std::vector<Q> p) {
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] != 0) {
            Q s = p[i];
            for (auto& c : p) c /= s;
            return p;
        }
    throw Error(ErrorKind::Hypothesis, "the zero vector is not a projective point");
}

FiberPoint fiber_singular_point(const Q& a, const Q& b) {
    if (4 * a * a * a + 27 * b * b != 0) throw Error(ErrorKind::Hypothesis, "the fiber is smooth: point is not on the discriminant");
    if (a == 0) return {Q(0), Q(0)};
    return {Q(-3 * b / (2 * a)), Q(0)};
}

std::vector<Q> fiber_singular_point(const WeierstrassModel& m, const std::vector<Q>& q) {
    std::vector<Q> z = normalize_point(q);
    FiberPoint f = fiber_singular_point(m.P.evaluate(z), m.Q.evaluate(z));
    return {f.x, f.y, z[0], z[1], z[2]};
}

namespace {

std::string family_text(const UPoly& R) { return "points over the roots of " + R.primitive().to_string("t"); }

bool point_greater(const CandidatePoint& a, const CandidatePoint& b) { return a.base > b.base; }

}  // namespace

CandidateSet candidate_points(const WeierstrassModel& m, const DiscriminantData& dd) {
    CandidateSet out;
    std::map<std::vector<Q>, PointKind> found;
    auto add = [&](const std::vector<Q>& p, PointKind k) { found.emplace(normalize_point(p), k); };

    const Polynomial& D1 = dd.delta1;
    std::vector<Polynomial> gradD1, gradQ;
    for (std::size_t i = 0; i < 3; ++i) {
        gradD1.push_back(partial_derivative(D1, i));
        gradQ.push_back(partial_derivative(m.Q, i));
    }
    Polynomial Dquot = *divide_exact(dd.delta, D1);

    // Singular points of the reduced discriminant, minus isolated double points with P = 0.
    std::vector<Polynomial> sys = {D1};
    sys.insert(sys.end(), gradD1.begin(), gradD1.end());
    ProjectiveSolution sing = solve_projective(sys);
    if (sing.positive_dimensional) throw Error(ErrorKind::Internal, "reduced discriminant has a singular curve");
    for (std::size_t i = 0; i < sing.families.size(); ++i) {
        PointFamily& fam = sing.families[i];
        PointFamily ex = fam;
        ex.restrict_to_zeros(m.P);
        ex.remove_common_zeros(gradQ);
        ex.remove_zeros(Dquot);
        if (!ex.empty()) {
            for (const auto& p : ex.rational_points()) {
                CandidatePoint c;
                c.base = normalize_point(p);
                c.kind = PointKind::Excluded;
                c.fiber = fiber_singular_point(m, c.base);
                out.excluded.push_back(std::move(c));
            }
            fam.R = (fam.R / ex.R).monic();
        }
        for (const auto& p : fam.rational_points()) add(p, PointKind::DeltaSingular);
        UPoly irr = fam.irrational_factor();
        if (irr.degree() > 0) out.unresolved.push_back({"singular points of the reduced discriminant", family_text(irr)});
    }

    if (!m.P.is_zero()) {
        const Polynomial& c = dd.common;
        Polynomial Phat = *divide_exact(m.P, c), Dhat = *divide_exact(D1, c);
        if (!Phat.is_constant() && !Dhat.is_constant()) {
            ProjectiveSolution q1 = solve_projective({Phat, Dhat});
            if (q1.positive_dimensional) throw Error(ErrorKind::Internal, "P and the reduced discriminant share a curve");
            for (auto& fam : q1.families) {
                fam.remove_zeros(c);
                fam.remove_common_zeros(gradD1);
                for (const auto& p : fam.rational_points()) add(p, PointKind::Q1);
                UPoly irr = fam.irrational_factor();
                if (irr.degree() > 0) out.unresolved.push_back({"isolated points of P = 0 on the discriminant", family_text(irr)});
            }
        }
        if (!c.is_constant()) {
            int e = 0;
            Polynomial rest = m.P;
            while (auto q = divide_exact(rest, c)) {
                rest = *q;
                ++e;
            }
            if (!gcd(rest, c).is_constant()) {
                out.unresolved.push_back({"double components of P",
                                          "components of " + render(c) + " occur in P with different orders"});
            } else if (e == 2) {
                std::vector<Polynomial> eqs = {c};
                for (std::size_t i = 0; i < 3; ++i)
                    for (std::size_t j = i; j < 3; ++j) eqs.push_back(partial_derivative(partial_derivative(m.P, i), j));
                ProjectiveSolution q2 = solve_projective(eqs);
                if (q2.positive_dimensional) throw Error(ErrorKind::Internal, "P vanishes to order 3 along a curve");
                for (const auto& fam : q2.families) {
                    for (const auto& p : fam.rational_points()) add(p, PointKind::Q2);
                    UPoly irr = fam.irrational_factor();
                    if (irr.degree() > 0) out.unresolved.push_back({"double components of P", family_text(irr)});
                }
            }
        }
    }

    for (const auto& [p, k] : found) {
        CandidatePoint c;
        c.base = p;
        c.kind = k;
        c.fiber = fiber_singular_point(m, p);
        out.points.push_back(std::move(c));
    }
    std::sort(out.points.begin(), out.points.end(), point_greater);
    std::sort(out.excluded.begin(), out.excluded.end(), point_greater);
    return out;
}

FiberType tate_fiber_type(int a, int b, int delta) {
    if (a < 0 || b < 0 || delta < 0) throw Error(ErrorKind::Hypothesis, "vanishing orders must be non-negative");
    if (a >= 4 && b >= 6) throw Error(ErrorKind::Minimality, "orders (" + std::to_string(a) + ", " + std::to_string(b) + ") are not minimal");
    const int ea = 3 * a, eb = 2 * b;
    if (ea != eb ? delta != std::min(ea, eb) : delta < ea)
        throw Error(ErrorKind::Hypothesis, "discriminant order " + std::to_string(delta) + " is inconsistent with (" +
                                               std::to_string(a) + ", " + std::to_string(b) + ")");
    auto A = [](int k) { return k >= 1 ? "A" + std::to_string(k) : std::string("none"); };
    if (delta == 0) return {"I0", "none"};
    if (a == 0 && b == 0) return {"I" + std::to_string(delta), A(delta - 1)};
    if (b == 1) return {"II", "none"};
    if (a == 1) return {"III", "A1"};
    if (b == 2) return {"IV", "A2"};
    if (a == 2 && b == 3) {
        int nu = delta - 6;
        return {"I" + std::to_string(nu) + "*", "D" + std::to_string(4 + nu)};
    }
    if (delta == 6) return {"I0*", "D4"};
    if (b == 4) return {"IV*", "E6"};
    if (a == 3) return {"III*", "E7"};
    return {"II*", "E8"};
}

}  // namespace mw
