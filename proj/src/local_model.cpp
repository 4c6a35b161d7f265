#include "mwrank/local_model.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "mwrank/errors.hpp"
#include "mwrank/graded.hpp"
#include "mwrank/linalg.hpp"
#include "mwrank/local_algebra.hpp"
#include "mwrank/upoly.hpp"

namespace mw {

namespace {

const std::vector<std::string> kLocalNames = {"s", "t", "u", "v"};
// Jet order up to which the Milnor algebra of the germ is computed to decide isolation.
constexpr int kIsolationProbeOrder = 14;

WeightSystem unit_local() {
    static const WeightSystem ws = WeightSystem::unit(kLocalNames);
    return ws;
}

bool has_low_terms(const Polynomial& f, std::string& what) {
    for (const auto& [m, c] : f.terms()) {
        long t = total_degree(m);
        if (t == 0) {
            what = "the chart does not center the point: constant term " + to_string(c);
            return true;
        }
        if (t == 1) {
            what = "Y is smooth at the point (linear term " + render_monomial(m, f.ring()) + ")";
            return true;
        }
    }
    return false;
}

}  // namespace

Frame identity_frame(const std::vector<Q>& base) {
    std::size_t c = 0;
    while (c < base.size() && base[c] == 0) ++c;
    if (base.size() != 3 || c == 3) throw Error(ErrorKind::Range, "base point must be a nonzero vector of length 3");
    Frame f;
    f.e1.fill(Q(0));
    f.e2.fill(Q(0));
    f.e1[c == 0 ? 1 : 0] = 1;
    f.e2[c == 2 ? 1 : 2] = 1;
    return f;
}

LocalChart local_chart(const WeierstrassModel& m, const std::vector<Q>& base) {
    return local_chart(m, base, identity_frame(base));
}

LocalChart local_chart(const WeierstrassModel& m, const std::vector<Q>& base, const Frame& frame) {
    LocalChart lc;
    lc.base = normalize_point(base);
    lc.frame = frame;
    const auto& q = lc.base;
    const auto& [e1, e2] = std::pair(frame.e1, frame.e2);
    Q det = q[0] * (e1[1] * e2[2] - e1[2] * e2[1]) - q[1] * (e1[0] * e2[2] - e1[2] * e2[0]) +
            q[2] * (e1[0] * e2[1] - e1[1] * e2[0]);
    if (det == 0) throw Error(ErrorKind::Internal, "singular frame");
    const WeightSystem L = unit_local();
    Polynomial s = Polynomial::variable(L, 0), t = Polynomial::variable(L, 1), u = Polynomial::variable(L, 2),
               v = Polynomial::variable(L, 3);
    std::vector<Polynomial> z;
    for (std::size_t i = 0; i < 3; ++i) z.push_back(Polynomial::constant(L, q[i]) + e1[i] * s + e2[i] * t);
    Polynomial Ploc = m.P.is_zero() ? Polynomial(L) : substitute(m.P, z);
    Polynomial Qloc = m.Q.is_zero() ? Polynomial(L) : substitute(m.Q, z);
    Q P0 = m.P.evaluate(q), Q0 = m.Q.evaluate(q);
    FiberPoint fp;
    try {
        fp = fiber_singular_point(P0, Q0);
    } catch (const Error&) {
        throw Error(ErrorKind::NotSingular, "the fiber over the point is smooth");
    }
    Polynomial x = Polynomial::constant(L, fp.x) + u;
    if (P0 != 0) x -= Q(1 / (6 * fp.x)) * (Ploc - Polynomial::constant(L, P0));
    lc.images = {x, v, z[0], z[1], z[2]};
    lc.fiber = {fp.x, fp.y, q[0], q[1], q[2]};
    lc.f = -(v * v) + x.pow(3) + Ploc * x + Qloc;
    return lc;
}

namespace {

using Form = std::array<Q, 3>;

Q dot(const Form& a, const std::vector<Q>& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Form cross(const std::vector<Q>& a, const std::vector<Q>& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

// Scales so the first nonzero entry is 1; false for the zero form.
bool normalize_form(Form& f) {
    std::size_t i = 0;
    while (i < 3 && f[i] == 0) ++i;
    if (i == 3) return false;
    Q c = f[i];
    for (auto& x : f) x /= c;
    return true;
}

void add_form(std::vector<Form>& out, Form f) {
    if (normalize_form(f) && std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
}

}  // namespace

std::vector<Frame> chart_frames(const WeierstrassModel& m, const std::vector<Q>& base,
                                const std::vector<std::vector<Q>>& others) {
    const std::vector<Q> q = normalize_point(base);
    const Frame id = identity_frame(q);
    std::vector<Frame> out = {id};
    std::size_t c = 0;
    while (q[c] == 0) ++c;

    // Axes through q, as linear forms vanishing at q.
    std::vector<Form> axes;
    Form ai{}, aj{};
    for (std::size_t k = 0; k < 3; ++k) {
        ai[k] = id.e1[k];
        aj[k] = id.e2[k];
    }
    std::size_t i1 = c == 0 ? 1 : 0, j1 = c == 2 ? 1 : 2;
    ai[c] = -q[i1];
    aj[c] = -q[j1];
    add_form(axes, ai);
    add_form(axes, aj);
    {
        LocalChart lc = local_chart(m, q, id);
        std::vector<Polynomial> z = {lc.images[2], lc.images[3], lc.images[4]};
        const WeightSystem& L = lc.f.ring();
        Polynomial Ploc = m.P.is_zero() ? Polynomial(L) : substitute(m.P, z);
        Polynomial Qloc = m.Q.is_zero() ? Polynomial(L) : substitute(m.Q, z);
        Polynomial delta = Q(4) * Ploc.pow(3) + Q(27) * Qloc.pow(2);
        if (!delta.is_zero()) {
            // Tangent lines a s + b t of the lowest form of the discriminant.
            Polynomial cone = graded_component(delta, delta.min_weighted_degree());
            std::vector<Q> co(cone.max_weighted_degree() + 1, Q(0));
            for (const auto& [mono, coef] : cone.terms()) co[mono[0]] = coef;  // coefficient of s^i t^(deg-i)
            std::vector<std::pair<Q, Q>> lines;
            if (co.back() == 0) lines.emplace_back(Q(0), Q(1));
            for (const Q& r : rational_roots(UPoly(co))) lines.emplace_back(Q(1), -r);
            for (const auto& [a, b] : lines) {
                Form f;
                for (std::size_t k = 0; k < 3; ++k) f[k] = a * ai[k] + b * aj[k];
                add_form(axes, f);
            }
        }
    }
    for (const auto& p : others) {
        if (p.size() != 3) continue;
        add_form(axes, cross(q, normalize_point(p)));
    }

    std::vector<Form> infinity;
    Form zc{};
    zc[c] = 1;
    infinity.push_back(zc);
    for (std::size_t a = 0; a < others.size(); ++a)
        for (std::size_t b = a + 1; b < others.size(); ++b) {
            Form f = cross(normalize_point(others[a]), normalize_point(others[b]));
            if (dot(f, q) != 0) add_form(infinity, f);
        }

    for (Form l : infinity) {
        Q lq = dot(l, q);
        for (auto& x : l) x /= lq;
        for (std::size_t a = 0; a < axes.size(); ++a)
            for (std::size_t b = a + 1; b < axes.size(); ++b) {
                DenseMatrix M = {{axes[a][0], axes[a][1], axes[a][2]},
                                 {axes[b][0], axes[b][1], axes[b][2]},
                                 {l[0], l[1], l[2]}};
                Q det = M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1]) -
                        M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0]) +
                        M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]);
                if (det == 0) continue;
                auto e1 = solve_linear(M, 3, {Q(1), Q(0), Q(0)});
                auto e2 = solve_linear(M, 3, {Q(0), Q(1), Q(0)});
                Frame f;
                for (std::size_t k = 0; k < 3; ++k) {
                    f.e1[k] = (*e1)[k];
                    f.e2[k] = (*e2)[k];
                }
                if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
                if (out.size() == kMaxFrames) return out;
            }
    }
    return out;
}

std::vector<long> normalize_chart(Polynomial& f, std::vector<Polynomial>& images, const Polynomial& g, long max_degree) {
    JacobianRing J(g);
    const WeightSystem& ws = g.ring();
    const long d = J.degree();
    std::vector<long> leftover;
    for (long e = d + 1; e <= max_degree; ++e) {
        Polynomial fe = graded_component(f, e);
        if (fe.is_zero()) continue;
        GradedQuotient Re(J, e);
        Polynomial rest = Re.reduce(fe);
        if (!rest.is_zero()) leftover.push_back(e);
        Polynomial target = fe - rest;
        if (target.is_zero()) continue;
        // Columns m * dg/dx_i for monomials m of degree e - (d - w_i).
        const GradedBasis& B = Re.basis();
        std::vector<std::pair<std::size_t, Monomial>> cols;
        for (std::size_t i = 0; i < ws.size(); ++i)
            for (const auto& m : monomial_basis(ws, e - J.partial_degree(i))) cols.emplace_back(i, m);
        DenseMatrix A(B.size(), std::vector<Q>(cols.size(), Q(0)));
        for (std::size_t c = 0; c < cols.size(); ++c) {
            Polynomial col = Polynomial::monomial(ws, cols[c].second) * J.partials()[cols[c].first];
            for (const auto& [row, q] : B.coordinates(col)) A[row][c] = q;
        }
        std::vector<Q> b(B.size(), Q(0));
        for (const auto& [row, q] : B.coordinates(target)) b[row] = q;
        auto x = solve_linear(A, cols.size(), b);
        if (!x) throw Error(ErrorKind::Internal, "Jacobian ideal membership without a solution");
        std::vector<Polynomial> subs;
        for (std::size_t i = 0; i < ws.size(); ++i) subs.push_back(Polynomial::variable(ws, i));
        for (std::size_t c = 0; c < cols.size(); ++c)
            if ((*x)[c] != 0) subs[cols[c].first] -= Polynomial::monomial(ws, cols[c].second, (*x)[c]);
        f = substitute_truncated(f, subs, max_degree);
        for (auto& img : images) img = substitute_truncated(img, subs, max_degree);
    }
    return leftover;
}

namespace {

Polynomial det_truncated(const std::vector<std::vector<Polynomial>>& a, std::vector<std::size_t>& cols, std::size_t row,
                         long max_degree) {
    if (row == a.size()) return Polynomial::constant(a[0][0].ring(), Q(1));
    Polynomial out(a[0][0].ring());
    int sign = 1;
    for (std::size_t i = 0; i < cols.size(); ++i) {
        std::size_t c = cols[i];
        if (!a[row][c].is_zero()) {
            cols.erase(cols.begin() + long(i));
            Polynomial minor = det_truncated(a, cols, row + 1, max_degree);
            cols.insert(cols.begin() + long(i), c);
            Polynomial term = mul_truncated(a[row][c], minor, max_degree);
            out = sign > 0 ? out + term : out - term;
        }
        sign = -sign;
    }
    return out;
}

}  // namespace

Polynomial chart_volume(const std::vector<Polynomial>& images, const std::vector<long>& ambient_weights,
                        long max_degree) {
    if (images.size() != 5 || ambient_weights.size() != 5) throw Error(ErrorKind::Dossier, "chart needs five images");
    const WeightSystem& ws = images[0].ring();
    std::vector<std::vector<Polynomial>> a(5);
    for (std::size_t i = 0; i < 5; ++i) {
        a[i].push_back(Q(ambient_weights[i]) * images[i]);
        for (std::size_t j = 0; j < ws.size(); ++j) a[i].push_back(partial_derivative(images[i], j));
    }
    std::vector<std::size_t> cols(5);
    std::iota(cols.begin(), cols.end(), 0);
    Polynomial vol = det_truncated(a, cols, 0, max_degree);
    Q c0 = vol.constant_term();
    if (c0 == 0) throw Error(ErrorKind::Dossier, "chart is not a local isomorphism at the point");
    return Q(1) / c0 * vol;
}

LiftResult dossier_tilde_lifts(const Polynomial& g) {
    LiftResult out;
    const WeightSystem& ws = g.ring();
    WeightedDegree wd = weighted_degree(g);
    if (ws.size() != 4 || !wd.homogeneous) throw Error(ErrorKind::Dossier, "local model must be homogeneous in (s, t, u, v)");
    const long d = wd.degree, target = 2 * d - ws.total();

    Polynomial dv = partial_derivative(g, 3);
    if (dv.size() != 1 || dv.terms().begin()->first != Monomial{0, 0, 0, 1}) {
        out.failure = "surface analysis needs g = c*v^2 + G(s, t, u)";
        out.weight_independent_failure = true;
        return out;
    }
    WeightSystem S({ws.weight(0), ws.weight(1), ws.weight(2)}, {"s", "t", "u"});
    std::vector<Polynomial> toS = {Polynomial::variable(S, 0), Polynomial::variable(S, 1), Polynomial::variable(S, 2),
                                   Polynomial(S)};
    Polynomial G = substitute(g, toS);
    std::vector<Polynomial> eqs;
    for (std::size_t i = 0; i < 3; ++i) {
        Polynomial p = partial_derivative(G, i);
        if (!p.is_zero()) eqs.push_back(p);
    }
    if (eqs.empty()) {
        out.failure = "the surface is singular along a curve";
        out.weight_independent_failure = true;
        return out;
    }
    std::vector<std::size_t> order = {0, 1, 2};
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return S.weight(a) < S.weight(b); });
    ProjectiveSolution sol = solve_projective(eqs, order);
    if (sol.positive_dimensional) {
        out.failure = "the surface is singular along a curve";
        out.weight_independent_failure = true;
        return out;
    }
    if (!sol.unresolved().empty()) {
        out.failure = "the surface has singular points with irrational coordinates";
        out.weight_independent_failure = true;
        return out;
    }

    struct Germ {
        std::vector<Polynomial> images;  // of (s, t, u, v) in the germ ring
        LocalMilnorAlgebra algebra;
    };
    std::vector<Germ> germs;
    std::vector<std::vector<Q>> points = sol.rational_points();
    std::sort(points.begin(), points.end(), std::greater<>());
    for (const auto& p3 : points) {
        std::size_t c = 3;
        for (auto i : order)
            if (p3[i] != 0) {
                c = i;
                break;
            }
        std::vector<std::string> names;
        for (std::size_t i = 0; i < 3; ++i)
            if (i != c) names.push_back(kLocalNames[i]);
        names.push_back("v");
        WeightSystem Lg = WeightSystem::unit(names);
        std::vector<Polynomial> images;
        for (std::size_t i = 0, k = 0; i < 3; ++i) {
            if (i == c) {
                images.push_back(Polynomial::constant(Lg, 1));
            } else {
                images.push_back(Polynomial::constant(Lg, p3[i] / p3[c]) + Polynomial::variable(Lg, k++));
            }
        }
        images.push_back(Polynomial::variable(Lg, 2));
        Polynomial h = substitute(g, images);
        std::optional<LocalMilnorAlgebra> alg;
        try {
            alg.emplace(h);
        } catch (const Error& e) {
            out.failure = std::string("surface point is not an isolated singularity: ") + e.what();
            return out;
        }
        AdeType type = classify_ade(h, alg->mu());
        if (!type.simple) {
            out.failure = "surface point is not of type ADE";
            return out;
        }
        SurfacePoint sp;
        sp.coords = {p3[0] / p3[c], p3[1] / p3[c], p3[2] / p3[c], Q(0)};
        sp.chart = c;
        sp.type = type.name();
        sp.mu = alg->mu();
        // Homogenize each basis monomial in y_i = x_i - p_i x_c^{w_i / w_c}.
        const int wc = ws.weight(c);
        Polynomial xc = Polynomial::variable(ws, c);
        for (const auto& mono : alg->basis()) {
            long deg = 0;
            Polynomial lift = Polynomial::constant(ws, 1);
            bool ok = true;
            for (std::size_t i = 0, k = 0; i < 3; ++i) {
                if (i == c) continue;
                int e = mono[k++];
                if (e == 0) continue;
                deg += long(e) * ws.weight(i);
                Polynomial y = Polynomial::variable(ws, i);
                if (sp.coords[i] != 0) {
                    if (ws.weight(i) % wc != 0) ok = false;
                    else y -= sp.coords[i] * xc.pow(ws.weight(i) / wc);
                }
                lift = lift * y.pow(e);
            }
            if (!ok) {
                out.failure = "cannot homogenize at a non-vertex orbifold point";
                return out;
            }
            long rest = target - deg;
            if (rest < 0) {
                out.failure = "Milnor basis element of degree above 2d - w";
                return out;
            }
            if (rest % wc != 0) {
                out.failure = "Milnor basis element is not invariant at an orbifold point";
                return out;
            }
            out.lifts.push_back(lift * xc.pow(unsigned(rest / wc)));
            ++sp.lifts;
        }
        out.points.push_back(sp);
        germs.push_back({images, std::move(*alg)});
    }

    // The lifts must map onto independent vectors of the sum of Milnor algebras.
    std::size_t cols = 0;
    for (const auto& gm : germs) cols += gm.algebra.mu();
    Echelon e(cols);
    for (const auto& h : out.lifts) {
        std::vector<Q> row;
        for (const auto& gm : germs) {
            auto c = gm.algebra.coordinates(substitute(h, gm.images));
            row.insert(row.end(), c.begin(), c.end());
        }
        e.insert(to_sparse(row));
    }
    if (e.rank() != out.lifts.size()) {
        out.failure = "homogenized Milnor bases are linearly dependent";
        return out;
    }
    out.ok = true;
    return out;
}

namespace {

std::string leftover_note(const std::vector<long>& degrees) {
    std::string s = "local equation keeps terms outside the Jacobian ideal of g in degree";
    for (std::size_t i = 0; i < degrees.size(); ++i) s += (i ? ", " : " ") + std::to_string(degrees[i]);
    return s;
}

bool fill_from_g(SingularityDossier& d, std::string& failure, bool& weight_independent) {
    JacobianRing J(d.g);
    QuasismoothCertificate cert = quasismooth_check(J);
    if (cert.quasismooth) {
        d.isolated = true;
        d.milnor = milnor_number(d.ring.weights(), d.degree);
        d.lifts.clear();
        d.surface_points.clear();
        return true;
    }
    LiftResult lr = dossier_tilde_lifts(d.g);
    if (!lr.ok) {
        failure = lr.failure;
        weight_independent = lr.weight_independent_failure;
        return false;
    }
    d.isolated = false;
    d.milnor.reset();
    d.lifts = lr.lifts;
    d.surface_points = lr.points;
    return true;
}

constexpr const char* kHigherOrderNote =
    "non-isolated point: higher-order terms of the local equation are assumed not to change the local cohomology";

}  // namespace

namespace {

bool equals_lowest_through(const Polynomial& f, long d, long top) {
    for (const auto& [mono, c] : f.terms()) {
        long e = weighted_degree(mono, f.ring());
        if (e > d && e <= top) return false;
    }
    return true;
}

bool has_target(const SingularityDossier& d) {
    TildeQuotient T(JacobianRing(d.g), d.lifts);
    for (long k = 1; k <= 2; ++k) {
        long deg = k * d.degree - d.w();
        if (deg >= 0 && T.piece(deg).dim() > 0) return true;
    }
    return false;
}

}  // namespace

ExtractionResult extract_local_model(const WeierstrassModel& m, const CandidatePoint& point,
                                     const std::optional<std::vector<int>>& proposed,
                                     const std::vector<std::vector<Q>>& others) {
    ExtractionResult res;
    for (std::size_t i = 2; i < 5; ++i)
        if (point.fiber.size() == 5 && point.fiber[i] != 0) break;
        else if (i == 4) throw Error(ErrorKind::Dossier, "point lies on the singular line z0 = z1 = z2 = 0");
    bool germ_isolated = false;
    {
        LocalChart lc = local_chart(m, point.base);
        std::string why;
        if (has_low_terms(lc.f, why)) throw Error(ErrorKind::NotSingular, why);
        // An isolated germ is modelled only by an isolated g; a non-isolated
        // initial part would hide its Milnor number.
        try {
            LocalMilnorAlgebra probe(lc.f, kIsolationProbeOrder);
            germ_isolated = true;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::Unsupported) throw;
        }
    }

    std::vector<std::vector<int>> weights;
    if (proposed) {
        if (proposed->size() != 4) throw Error(ErrorKind::Dossier, "local weights need four entries");
        for (int x : *proposed)
            if (x < 1) throw Error(ErrorKind::Dossier, "local weights must be positive");
        weights.push_back(*proposed);
    } else {
        for (int a = 1; a <= 12; ++a)
            for (int b = 1; b <= 12; ++b)
                for (int c = 1; c <= 12; ++c)
                    for (int e = 1; e <= 12; ++e)
                        if (std::gcd(std::gcd(a, b), std::gcd(c, e)) == 1) weights.push_back({a, b, c, e});
    }

    std::map<std::string, std::string> dead;  // weight-independent failures by g
    std::string last_failure = "no weight vector makes the lowest part weighted homogeneous with v^2";
    for (const Frame& frame : chart_frames(m, point.base, others)) {
        LocalChart lc = local_chart(m, point.base, frame);
        std::vector<std::pair<long, std::vector<int>>> cands;
        for (const auto& w : weights) {
            WeightSystem ws(w, kLocalNames);
            long d = lc.f.with_ring(ws).min_weighted_degree();
            if (d != 2L * w[3] || d > 36) continue;
            if (std::any_of(w.begin(), w.end(), [&](int x) { return x >= d; })) continue;
            cands.emplace_back(d, w);
        }
        std::sort(cands.begin(), cands.end());
        for (const auto& [d, w] : cands) {
            WeightSystem ws(w, kLocalNames);
            Polynomial g = graded_component(lc.f.with_ring(ws), d);
            std::string key = render(g.with_ring(unit_local()));
            if (dead.count(key)) continue;
            SingularityDossier dos;
            dos.point = point;
            dos.point.fiber = lc.fiber;
            dos.ring = ws;
            dos.g = g;
            dos.degree = d;
            for (const auto& img : lc.images) dos.chart.push_back(img.with_ring(ws));
            bool indep = false;
            std::string failure;
            if (fill_from_g(dos, failure, indep)) {
                if (germ_isolated && !dos.isolated) {
                    last_failure = "isolated point whose lowest part is not isolated for any tried weights";
                    continue;
                }
                // Only isolated points: for non-isolated g the Jacobian ideal
                // leaves the coordinate change undetermined and the graded
                // restriction depends on that choice.
                const long top = 3 * d - ws.total();
                Polynomial fw = lc.f.with_ring(ws);
                if (dos.isolated) {
                    auto left = normalize_chart(fw, dos.chart, g, top);
                    if (!left.empty()) dos.notes.push_back(leftover_note(left));
                } else if (has_target(dos)) {
                    if (!equals_lowest_through(fw, d, top)) {
                        last_failure = "non-isolated point whose local equation is not weighted homogeneous up to degree " +
                                       std::to_string(top) + " in any tried chart";
                        continue;
                    }
                    dos.notes.push_back("non-isolated point: the local equation equals g up to degree " +
                                        std::to_string(top));
                } else {
                    dos.notes.push_back("non-isolated point with zero target pieces");
                }
                dos.notes.push_back("weights " + ws.describe() + ", degree " + std::to_string(d) +
                                    " derived by the weight search, smallest degree first");
                dos.provenance = Provenance::Auto;
                res.dossier = std::move(dos);
                return res;
            }
            last_failure = failure + " (weights " + ws.describe() + ")";
            if (indep) dead.emplace(key, failure);
        }
    }
    res.failure = "needs user dossier: " + last_failure;
    return res;
}

void complete_dossier(const WeierstrassModel& m, SingularityDossier& d) {
    if (d.ring.size() != 4) throw Error(ErrorKind::Dossier, "local ring must have four variables");
    if (d.g.ring() != d.ring) throw Error(ErrorKind::Dossier, "local model is not in the local ring");
    WeightedDegree wd = weighted_degree(d.g);
    if (!wd.homogeneous || wd.degree != d.degree)
        throw Error(ErrorKind::Dossier, "local model is not weighted homogeneous of degree " + std::to_string(d.degree));
    if (d.chart.size() != 5) throw Error(ErrorKind::Dossier, "chart needs images of x, y, z0, z1, z2");
    for (const auto& img : d.chart)
        if (img.ring() != d.ring) throw Error(ErrorKind::Dossier, "chart images must be in the local ring");

    Polynomial f = substitute(defining_polynomial(m), d.chart);
    std::string why;
    if (has_low_terms(f, why)) throw Error(ErrorKind::Dossier, why);
    long low = f.min_weighted_degree();
    if (low < d.degree)
        throw Error(ErrorKind::Dossier, "pulled-back equation has terms of degree " + std::to_string(low) +
                                            " below the declared degree");
    if (graded_component(f, d.degree) != d.g)
        d.notes.push_back("declared local model differs from the lowest part of the pulled-back equation; contact equivalence is assumed");

    if (!d.lifts.empty()) {
        TildeQuotient check(JacobianRing(d.g), d.lifts);
        d.isolated = false;
        d.notes.push_back("lifts supplied by the user");
        d.notes.push_back(kHigherOrderNote);
        return;
    }
    std::string failure;
    bool indep = false;
    if (!fill_from_g(d, failure, indep)) throw Error(ErrorKind::Dossier, "cannot derive lifts: " + failure);
    if (!d.isolated) d.notes.push_back(kHigherOrderNote);
}

}  // namespace mw
