#include <array>
#include <random>

#include "doctest.h"
#include "mwrank/errors.hpp"
#include "mwrank/pipeline.hpp"
#include "test_support.hpp"

using namespace mw;
using mwtest::poly;

namespace {

WeierstrassModel worked() { return make_model(1, Polynomial(base_ring()), poly("z0^2*z2^2*(z0*z2 - z1^2)", base_ring())); }

WeierstrassModel hirzebruch_one_point() {
    auto B = base_ring();
    return make_model(3, poly("z1^12 + z2^12 + (z1^4 + z2^4)*z0^8", B), poly("z1^18 + z2^18 + (z1^6 - z2^6)*z0^12", B));
}

DossierInput declared(std::string name, std::vector<Q> p) {
    DossierInput d;
    d.name = std::move(name);
    d.point = std::move(p);
    return d;
}

// Number of monomials of degree d in weights w, by the coin-change recursion.
long count_monomials(const std::vector<int>& w, long d) {
    std::vector<long> c(d + 1, 0);
    c[0] = 1;
    for (int wi : w)
        for (long k = wi; k <= d; ++k) c[k] += c[k - wi];
    return d < 0 ? 0 : c[d];
}

// Multiplicity >= k at each point, as the vanishing of every partial
// derivative of order k - 1 of the monomials of degree d. By Euler's
// relation this matches the Taylor conditions when d >= k - 1.
long defect_oracle(int d, int k, const std::vector<std::vector<Q>>& pts) {
    if (k == 0 || pts.empty()) return 0;
    std::vector<std::array<int, 3>> monos, alphas;
    for (int a = 0; a <= d; ++a)
        for (int b = 0; a + b <= d; ++b) monos.push_back({a, b, d - a - b});
    for (int a = 0; a <= k - 1; ++a)
        for (int b = 0; a + b <= k - 1; ++b) alphas.push_back({a, b, k - 1 - a - b});
    std::vector<std::vector<Q>> M;
    for (const auto& m : monos) {
        std::vector<Q> row;
        for (const auto& p : pts)
            for (const auto& al : alphas) {
                Q v(1);
                for (int i = 0; i < 3; ++i) {
                    if (al[i] > m[i]) {
                        v = 0;
                        break;
                    }
                    for (int f = 0; f < al[i]; ++f) v *= m[i] - f;
                    for (int e = 0; e < m[i] - al[i]; ++e) v *= p[i];
                }
                row.push_back(v);
            }
        M.push_back(row);
    }
    return long(pts.size() * alphas.size()) - long(mwtest::naive_rank(M));
}

}  // namespace

TEST_CASE("worked example has rank two") {
    Analysis a = analyze(worked(), {}, CandidateMode::Auto);
    CHECK(a.dossiers.size() == 3);
    CHECK(a.unresolved.empty());
    RankReport r = compute_rank(a);
    CHECK(r.r0 == 0);
    CHECK(r.r1 == 2);
    CHECK(r.verdict == Verdict::Exact);
    CHECK(r.statement() == "rank MW = 2 (exact: r0 = 0, r1 = 2)");
}

TEST_CASE("restriction matrix of the worked example") {
    Analysis a = analyze(worked(), {}, CandidateMode::Auto);
    RestrictionMatrix R2 = restriction_matrix(a.model, a.dossiers, 2);
    CHECK(R2.source_degree == 4);
    CHECK(long(R2.source_dim) == count_monomials({2, 3, 1, 1, 1}, 4));
    CHECK(R2.rows.size() == R2.source_dim);
    std::size_t cols = 0;
    for (const auto& t : R2.targets) {
        CHECK(t.degree == 4);
        cols += t.representatives.size();
    }
    CHECK(cols == 4);
    CHECK(R2.columns() == 4);
    CHECK(R2.rank() == 2);
    CHECK(R2.cokernel() == 2);

    RestrictionMatrix R1 = restriction_matrix(a.model, a.dossiers, 1);
    CHECK(R1.source_degree == -2);
    CHECK(R1.source_dim == 0);
    CHECK(R1.columns() == 0);
}

TEST_CASE("restriction does not depend on the thread count") {
    Analysis a = analyze(worked(), {}, CandidateMode::Auto);
    RestrictionMatrix one = restriction_matrix(a.model, a.dossiers, 2, 1);
    for (unsigned t : {2u, 3u, 8u}) {
        RestrictionMatrix many = restriction_matrix(a.model, a.dossiers, 2, t);
        CHECK(many.rows == one.rows);
        CHECK(compute_rank(a, t).statement() == compute_rank(a, 1).statement());
    }
}

TEST_CASE("smooth sextic has rank zero") {
    auto m = make_model(1, Polynomial(base_ring()), poly("z0^6 + z1^6 + z2^6", base_ring()));
    Analysis a = analyze(m, {}, CandidateMode::Auto);
    CHECK(a.dossiers.empty());
    RankReport r = compute_rank(a);
    CHECK(r.r1 == 0);
    CHECK(r.verdict == Verdict::Exact);
    REQUIRE(r.hodge);
    REQUIRE(r.hodge->betti[3]);
    CHECK(*r.hodge->betti[3] == 42);
    REQUIRE(r.hodge->euler_Y);
    // b1 = b5 = 0 and b0 = b2 = b4 = b6 = 1.
    CHECK(*r.hodge->euler_Y == 4 - *r.hodge->betti[3]);
    CHECK(*r.hodge->euler_Y == r.hodge->euler_T);
}

TEST_CASE("Hirzebruch-type model at its base point") {
    auto m = hirzebruch_one_point();
    Analysis a = analyze(m, {declared("base", {Q(1), Q(0), Q(0)})}, CandidateMode::Declared);
    REQUIRE(a.dossiers.size() == 1);
    const auto& d = a.dossiers[0];
    CHECK(d.isolated);
    REQUIRE(d.milnor);
    CHECK(*d.milnor == milnor_number(d.ring.weights(), d.degree));
    CHECK(*d.milnor == 50);
    RankReport r = compute_rank(a);
    CHECK(r.r0 == 0);
    CHECK(r.r1 == 0);
    CHECK(r.verdict == Verdict::Exact);
    REQUIRE(r.hodge);
    CHECK(*r.hodge->betti[3] == 496);
    CHECK(*r.hodge->mu_total == 50);
    CHECK(*r.hodge->euler_Y == -492);
    CHECK(r.hodge->euler_T == -542);
    // Smoothing an isolated threefold point changes e by its Milnor number.
    CHECK(*r.hodge->euler_Y == r.hodge->euler_T + *r.hodge->mu_total);
    CHECK(*r.hodge->euler_Y == 4 - *r.hodge->betti[3]);

    HirzebruchTable t = hirzebruch_invariants(1, int(r.r1));
    CHECK(t.h11 == 3);
    CHECK(t.h21 == 243);
}

TEST_CASE("Hirzebruch tables") {
    HirzebruchTable t0 = hirzebruch_invariants(0, 0);
    CHECK(t0.h11 == 2);
    CHECK(t0.h21 == 272);
    CHECK(t0.euler == -540);
    HirzebruchTable t8 = hirzebruch_invariants(8, 0);
    CHECK(t8.h11 == 10);
    CHECK(t8.h21 == 40);
    CHECK(t8.euler == -60);
    for (int m = 0; m <= 8; ++m)
        for (int r = 0; r <= 4; ++r) {
            HirzebruchTable t = hirzebruch_invariants(m, r);
            CHECK(t.euler == 2 * (t.h11 - t.h21));
            // Independent of the rank: sections add to h11 and h21 alike.
            CHECK(t.euler == -540 + 60 * m);
            CHECK(t.h30 == 1);
            CHECK(t.h10 == 0);
            CHECK(t.h20 == 0);
        }
    CHECK_THROWS_AS(hirzebruch_invariants(9, 0), Error);
    CHECK_THROWS_AS(hirzebruch_invariants(0, -1), Error);
}

TEST_CASE("upper bound when r0 is positive") {
    // Orders (8, 12) at the vertex: R~ has a class in degree d - w = 0.
    auto B = base_ring();
    auto m = make_model(2, poly("z1^8 + z2^8", B), poly("z1^12 + z2^12", B));
    Analysis a = analyze(m, {declared("o", {Q(1), Q(0), Q(0)})}, CandidateMode::Declared);
    REQUIRE(a.dossiers.size() == 1);
    CHECK(a.dossiers[0].degree - a.dossiers[0].w() == 0);
    RankReport r = compute_rank(a);
    CHECK(r.r0 == 1);
    CHECK(r.verdict == Verdict::UpperBound);
    CHECK(r.statement().rfind("rank MW <= ", 0) == 0);
}

TEST_CASE("unresolved points make the verdict conditional") {
    auto m = make_model(1, Polynomial(base_ring()), poly("z1*(z0^2 - 2*z2^2)*(z1^3 + z0^3 + z2^3)", base_ring()));
    Analysis a = analyze(m, {}, CandidateMode::Auto);
    CHECK_FALSE(a.unresolved.empty());
    RankReport r = compute_rank(a);
    CHECK(r.verdict == Verdict::Conditional);
    CHECK(r.statement().find("undetermined") != std::string::npos);
    CHECK(r.statement().find("over the resolved points") != std::string::npos);
}

TEST_CASE("declared mode takes only the listed points") {
    auto m = worked();
    Analysis a = analyze(m, {declared("p", {Q(2), Q(0), Q(0)})}, CandidateMode::Declared);
    CHECK_FALSE(a.disc);
    REQUIRE(a.dossiers.size() == 1);
    CHECK(a.dossiers[0].point.base == std::vector<Q>{Q(1), Q(0), Q(0)});
    CHECK(compute_rank(a).r1 <= 2);
}

TEST_CASE("linear system defects") {
    CHECK(linear_system_defect(2, 2, {{Q(1), Q(0), Q(0)}, {Q(0), Q(1), Q(0)}}) == 1);
    std::vector<std::vector<Q>> five = {
        {Q(1), Q(0), Q(0)}, {Q(0), Q(1), Q(0)}, {Q(0), Q(0), Q(1)}, {Q(1), Q(1), Q(1)}, {Q(1), Q(2), Q(3)}};
    CHECK(linear_system_defect(4, 2, five) == 1);
    std::vector<std::vector<Q>> eight = {{Q(1), Q(0), Q(0)},  {Q(0), Q(1), Q(0)}, {Q(0), Q(0), Q(1)},
                                         {Q(1), Q(1), Q(1)},  {Q(1), Q(2), Q(3)}, {Q(1), Q(-1), Q(2)},
                                         {Q(2), Q(1), Q(-3)}, {Q(3), Q(5), Q(1)}};
    for (std::size_t m = 0; m <= 8; ++m) {
        std::vector<std::vector<Q>> pts(eight.begin(), eight.begin() + m);
        CHECK(linear_system_defect(18, 6, pts) == 0);
    }
    CHECK(linear_system_defect(3, 0, five) == 0);
    CHECK_THROWS_AS(linear_system_defect(2, 2, {{Q(1), Q(0), Q(0)}, {Q(2), Q(0), Q(0)}}), Error);
    CHECK_THROWS_AS(linear_system_defect(2, 2, {{Q(0), Q(0), Q(0)}}), Error);
}

TEST_CASE("defects agree with a derivative-based oracle") {
    std::mt19937 rng(21);
    std::uniform_int_distribution<int> dd(1, 6), kk(1, 3), mm(1, 5);
    for (int it = 0; it < 100; ++it) {
        int d = dd(rng), k = std::min(kk(rng), d + 1), m = mm(rng);
        std::vector<std::vector<Q>> pts;
        while (int(pts.size()) < m) {
            auto p = normalize_point(mwtest::random_point(rng, 3));
            bool zero = std::all_of(p.begin(), p.end(), [](const Q& x) { return x == 0; });
            if (!zero && std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
        }
        CAPTURE(d);
        CAPTURE(k);
        CAPTURE(m);
        CHECK(linear_system_defect(d, k, pts) == defect_oracle(d, k, pts));
    }
}
