#include "mwrank/pipeline.hpp"

#include <algorithm>
#include <sstream>
#include <thread>

#include "mwrank/errors.hpp"

namespace mw {

namespace {

const DossierInput* find_input(const std::vector<DossierInput>& inputs, const std::vector<std::vector<Q>>& normalized,
                               const std::vector<Q>& base) {
    for (std::size_t i = 0; i < inputs.size(); ++i)
        if (normalized[i] == base) return &inputs[i];
    return nullptr;
}

}  // namespace

Analysis analyze(const WeierstrassModel& m, const std::vector<DossierInput>& inputs, CandidateMode mode) {
    Analysis a;
    a.model = m;
    a.mode = mode;
    std::vector<std::vector<Q>> normalized;
    for (const auto& in : inputs) {
        if (in.point.size() != 3 || std::all_of(in.point.begin(), in.point.end(), [](const Q& x) { return x == 0; }))
            throw Error(ErrorKind::Dossier, "dossier " + in.name + ": point needs three coordinates, not all zero");
        auto q = normalize_point(in.point);
        if (std::find(normalized.begin(), normalized.end(), q) != normalized.end())
            throw Error(ErrorKind::Dossier, "two dossiers for the point " + format_point(q));
        normalized.push_back(q);
    }

    if (mode == CandidateMode::Auto) {
        a.disc = discriminant(m);
        a.candidates = candidate_points(m, *a.disc);
        for (const auto& u : a.candidates.unresolved) a.unresolved.push_back(u.source + ": " + u.description);
    } else {
        a.notes.push_back("candidate points declared in the manifest; the candidate search was not run");
    }
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        const auto& q = normalized[i];
        bool known = std::any_of(a.candidates.points.begin(), a.candidates.points.end(),
                                 [&](const CandidatePoint& c) { return c.base == q; });
        if (known) continue;
        CandidatePoint c;
        c.base = q;
        c.kind = PointKind::UserDeclared;
        try {
            c.fiber = fiber_singular_point(m, q);
        } catch (const Error&) {
            throw Error(ErrorKind::Dossier, "dossier " + inputs[i].name + ": the fiber over " + format_point(q) + " is smooth");
        }
        a.candidates.points.push_back(c);
    }

    std::size_t auto_index = 0;
    for (const auto& c : a.candidates.points) {
        ++auto_index;
        const DossierInput* in = find_input(inputs, normalized, c.base);
        std::string name = in ? in->name : "p" + std::to_string(auto_index);
        if (in && in->full) {
            SingularityDossier d = *in->full;
            d.name = name;
            d.point = c;
            d.provenance = Provenance::User;
            complete_dossier(m, d);
            a.dossiers.push_back(std::move(d));
            continue;
        }
        ExtractionResult r;
        try {
            std::vector<std::vector<Q>> others;
            for (const auto& o : a.candidates.points)
                if (o.base != c.base) others.push_back(o.base);
            r = extract_local_model(m, c, in ? in->weights : std::nullopt, others);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::NotSingular) throw;
            a.notes.push_back("point " + format_point(c.base) + ": Y is smooth there, no local contribution");
            continue;
        }
        if (!r.dossier) {
            a.unresolved.push_back("point " + format_point(c.base) + ": " + r.failure);
            continue;
        }
        r.dossier->name = name;
        a.dossiers.push_back(std::move(*r.dossier));
    }
    return a;
}

std::size_t RestrictionMatrix::columns() const {
    std::size_t c = 0;
    for (const auto& t : targets) c += t.representatives.size();
    return c;
}

std::size_t RestrictionMatrix::rank() const {
    Echelon e(columns());
    for (const auto& r : rows) e.insert(r);
    return e.rank();
}

RestrictionMatrix restriction_matrix(const WeierstrassModel& m, const std::vector<SingularityDossier>& dossiers, int k,
                                     unsigned threads) {
    if (k != 1 && k != 2) throw Error(ErrorKind::Range, "restriction degree multiple must be 1 or 2");
    RestrictionMatrix R;
    R.k = k;
    R.source_degree = long(k) * 6 * m.n - (5L * m.n + 3);
    GradedBasis source(ambient_ring(m.n), R.source_degree);
    R.source_dim = source.size();

    const std::vector<long> weights = {2L * m.n, 3L * m.n, 1, 1, 1};
    std::vector<GradedQuotient> quotients;
    std::vector<Polynomial> volumes;
    std::vector<std::size_t> offsets;
    std::size_t cols = 0;
    for (const auto& d : dossiers) {
        if (d.chart.size() != 5) throw Error(ErrorKind::Dossier, d.name + ": chart needs five images");
        for (const auto& img : d.chart)
            if (img.ring() != d.ring) throw Error(ErrorKind::Dossier, d.name + ": chart image outside the local ring");
        RestrictionTarget t;
        t.dossier = d.name;
        t.degree = long(k) * d.degree - d.w();
        TildeQuotient T(JacobianRing(d.g), d.lifts);
        quotients.push_back(T.piece(t.degree));
        t.representatives = quotients.back().representatives();
        volumes.push_back(t.representatives.empty() ? Polynomial(d.ring) : chart_volume(d.chart, weights, t.degree));
        offsets.push_back(cols);
        cols += t.representatives.size();
        R.targets.push_back(std::move(t));
    }

    R.rows.assign(source.size(), {});
    if (cols == 0) return R;
    auto work = [&](std::size_t first, std::size_t step) {
        for (std::size_t i = first; i < source.size(); i += step) {
            Polynomial h = source.polynomial({{i, Q(1)}});
            SparseVec row;
            for (std::size_t j = 0; j < dossiers.size(); ++j) {
                const long td = R.targets[j].degree;
                if (R.targets[j].representatives.empty()) continue;
                Polynomial pulled = mul_truncated(substitute_truncated(h, dossiers[j].chart, td), volumes[j], td);
                pulled = graded_component(pulled, td);
                auto nf = quotients[j].normal_form(pulled);
                for (std::size_t c = 0; c < nf.size(); ++c)
                    if (nf[c] != 0) row.emplace_back(offsets[j] + c, nf[c]);
            }
            R.rows[i] = std::move(row);
        }
    };
    threads = std::max(1u, std::min<unsigned>(threads, unsigned(std::max<std::size_t>(1, source.size()))));
    if (threads == 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
        for (auto& th : pool) th.join();
    }
    return R;
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Exact: return "exact";
        case Verdict::UpperBound: return "upper bound";
        case Verdict::Conditional: return "conditional";
    }
    return "?";
}

std::string RankReport::statement() const {
    std::ostringstream os;
    switch (verdict) {
        case Verdict::Exact: os << "rank MW = " << r1; break;
        case Verdict::UpperBound: os << "rank MW <= " << r1; break;
        case Verdict::Conditional: os << "rank MW undetermined"; break;
    }
    os << " (" << verdict_name(verdict) << ": r0 = " << r0 << ", r1 = " << r1;
    if (verdict == Verdict::Conditional) os << " over the resolved points";
    os << ")";
    return os.str();
}

namespace {

std::string describe_matrix(const RestrictionMatrix& R) {
    std::ostringstream os;
    os << "k=" << R.k << ": C[x,y,z0,z1,z2]_" << R.source_degree << " (dim " << R.source_dim << ") -> ";
    if (R.targets.empty()) os << "0";
    for (std::size_t i = 0; i < R.targets.size(); ++i)
        os << (i ? " + " : "") << "R~(" << R.targets[i].dossier << ")_" << R.targets[i].degree << " (dim "
           << R.targets[i].representatives.size() << ")";
    os << ", rank " << R.rank() << ", cokernel " << R.cokernel();
    return os.str();
}

}  // namespace

RankReport compute_rank(const Analysis& a, unsigned threads) {
    RankReport rep;
    RestrictionMatrix R1 = restriction_matrix(a.model, a.dossiers, 1, threads);
    RestrictionMatrix R2 = restriction_matrix(a.model, a.dossiers, 2, threads);
    rep.r0 = R1.cokernel();
    rep.r1 = R2.cokernel();
    rep.provenance.push_back("r0 = dim coker " + describe_matrix(R1));
    rep.provenance.push_back("r1 = dim coker " + describe_matrix(R2));
    rep.provenance.push_back(
        "assumption: pulled-back classes are represented by their graded part of degree k d_p - w_p");
    for (const auto& d : a.dossiers)
        for (const auto& n : d.notes) rep.provenance.push_back(d.name + ": " + n);
    for (const auto& n : a.notes) rep.provenance.push_back(n);
    rep.unresolved = a.unresolved;
    if (!rep.unresolved.empty()) {
        rep.verdict = Verdict::Conditional;
        rep.provenance.push_back("caveat: purity of H^4(Y) is assumed; it is known for admissible Y only");
    } else {
        rep.verdict = rep.r0 == 0 ? Verdict::Exact : Verdict::UpperBound;
        rep.provenance.push_back("all singular points admissible, so H^4(Y) carries a pure Hodge structure");
    }
    rep.hodge = hodge_summary(a.model, a.dossiers, rep);
    return rep;
}

HodgeSummary hodge_summary(const WeierstrassModel& m, const std::vector<SingularityDossier>& dossiers,
                           const RankReport& report) {
    HodgeSummary h;
    h.h31 = long(report.r0);
    h.h22_prim = long(report.r1);
    const long d = 6L * m.n, w = 5L * m.n + 3;
    HilbertSeries hs = hilbert_series_regular({2 * m.n, 3 * m.n, 1, 1, 1}, d);
    PrimitiveHodge ref;
    ref.dimension = 3;
    for (long k = 1; k <= 4; ++k) ref.h.push_back(hs.coefficient(k * d - w));
    h.euler_T = ref.euler_characteristic();

    long mu = 0;
    bool have_mu = true;
    for (const auto& ds : dossiers) {
        if (ds.isolated && ds.milnor) {
            mu += *ds.milnor;
        } else {
            have_mu = false;
            h.notes.push_back("h3 omitted: " + ds.name + " is not an isolated singularity with known Milnor number");
        }
    }
    if (!report.unresolved.empty()) {
        have_mu = false;
        h.notes.push_back("h3 omitted: unresolved candidate points");
    }
    const long h4 = 1 + 2 * h.h31 + h.h22_prim;
    h.betti = {1, 0, 1, std::nullopt, h4, 0, 1};
    if (have_mu) {
        h.mu_total = mu;
        h.euler_Y = h.euler_T + mu;
        h.betti[3] = 3 + h4 - *h.euler_Y;
    }
    return h;
}

HirzebruchTable hirzebruch_invariants(int m, int r) {
    if (m < 0 || m > 8) throw Error(ErrorKind::Range, "m must lie in 0..8");
    if (r < 0) throw Error(ErrorKind::Range, "rank must be non-negative");
    HirzebruchTable t;
    t.m = m;
    t.r = r;
    t.h11 = m + 2 + r;
    t.h21 = 272 - 29L * m + r;
    t.euler = 2 * (t.h11 - t.h21);
    if (t.euler != -540 + 60L * m) throw Error(ErrorKind::Internal, "Euler characteristic mismatch");
    return t;
}

long linear_system_defect(int d, int k, const std::vector<std::vector<Q>>& points) {
    if (d < 0 || k < 0) throw Error(ErrorKind::Range, "degree and multiplicity must be non-negative");
    std::vector<std::vector<Q>> pts;
    for (const auto& p : points) {
        if (p.size() != 3 || std::all_of(p.begin(), p.end(), [](const Q& x) { return x == 0; }))
            throw Error(ErrorKind::Range, "plane points need three coordinates, not all zero");
        auto q = normalize_point(p);
        if (std::find(pts.begin(), pts.end(), q) != pts.end()) throw Error(ErrorKind::Range, "points must be distinct");
        pts.push_back(q);
    }
    const long conditions = long(pts.size()) * k * (k + 1) / 2;
    if (conditions == 0) return 0;
    GradedBasis space(base_ring(), d);
    WeightSystem ab = WeightSystem::unit({"a", "b"});
    auto jets = monomial_basis(ab, 0);
    for (int e = 1; e < k; ++e) {
        auto more = monomial_basis(ab, e);
        jets.insert(jets.end(), more.begin(), more.end());
    }
    // Columns: (point, jet monomial); rows: degree-d monomials.
    Echelon e{std::size_t(conditions)};
    for (std::size_t i = 0; i < space.size(); ++i) {
        Polynomial mono = space.polynomial({{i, Q(1)}});
        SparseVec row;
        for (std::size_t p = 0; p < pts.size(); ++p) {
            std::size_t c = 0;
            while (pts[p][c] == 0) ++c;
            std::vector<Polynomial> images;
            for (std::size_t j = 0, v = 0; j < 3; ++j) {
                if (j == c) {
                    images.push_back(Polynomial::constant(ab, 1));
                } else {
                    images.push_back(Polynomial::constant(ab, pts[p][j]) + Polynomial::variable(ab, v++));
                }
            }
            Polynomial local = substitute_truncated(mono, images, k - 1);
            for (std::size_t j = 0; j < jets.size(); ++j) {
                Q c2 = local.coeff(jets[j]);
                if (c2 != 0) row.emplace_back(p * jets.size() + j, c2);
            }
        }
        e.insert(row);
    }
    return conditions - long(e.rank());
}

}  // namespace mw
