#include <random>

#include "doctest.h"
#include "mwrank/errors.hpp"
#include "mwrank/graded.hpp"
#include "mwrank/local_algebra.hpp"
#include "test_support.hpp"

using namespace mw;
using mwtest::poly;

namespace {

WeightSystem stuv(std::vector<int> w = {2, 1, 2, 3}) { return WeightSystem(std::move(w), {"s", "t", "u", "v"}); }

// Power series of prod (1 + t^w + ... + t^(d-2w)), valid when every w divides d.
std::vector<long> geometric_product(const std::vector<int>& w, long d) {
    std::vector<long> c = {1};
    for (int wi : w) {
        std::vector<long> next(c.size() + (d - 2 * wi), 0);
        for (std::size_t i = 0; i < c.size(); ++i)
            for (long e = 0; e <= d - 2 * wi; e += wi) next[i + e] += c[i];
        c = next;
    }
    return c;
}

std::vector<std::string> rendered(const std::vector<Monomial>& ms, const WeightSystem& ws) {
    std::vector<std::string> out;
    for (const auto& m : ms) out.push_back(render_monomial(m, ws));
    return out;
}

}  // namespace

TEST_CASE("jacobian ideal pieces") {
    auto F = WeightSystem::unit({"x", "y", "z"});
    JacobianRing fermat(poly("x^3 + y^3 + z^3", F));
    CHECK(jacobian_ideal_piece(fermat, 1).empty());
    Echelon e(GradedBasis(F, 2).size());
    for (const auto& r : jacobian_ideal_piece(fermat, 2)) e.insert(r);
    CHECK(e.rank() == 3);

    JacobianRing g(poly("-v^2 + u^3 + t^2*s^2 + s^3", stuv()));
    GradedQuotient R4(g, 4);
    // 7 monomials of degree 4, quotient of dimension 4.
    CHECK(R4.basis().size() == 7);
    CHECK(R4.ideal_rank() == 3);
    CHECK(R4.dim() + R4.ideal_rank() == R4.basis().size());
    CHECK(jacobian_ideal_piece(g, 2).size() == 0);
}

TEST_CASE("graded quotients of the worked example") {
    auto ws = stuv();
    JacobianRing g(poly("-v^2 + u^3 + t^2*s^2 + s^3", ws));
    GradedQuotient R4(g, 4);
    CHECK(R4.dim() == 4);
    auto reps = rendered(R4.representatives(), ws);
    std::sort(reps.begin(), reps.end());
    CHECK(reps == std::vector<std::string>{"s*u", "s^2", "t^2*u", "t^4"});
    CHECK(GradedQuotient(g, -2).dim() == 0);

    auto F = WeightSystem::unit({"x", "y", "z"});
    GradedQuotient C3(JacobianRing(poly("x^3 + y^3 + z^3", F)), 3);
    CHECK(C3.dim() == 1);
    CHECK(rendered(C3.representatives(), F) == std::vector<std::string>{"x*y*z"});
}

TEST_CASE("normal forms vanish on the ideal and fix representatives") {
    auto ws = stuv();
    JacobianRing g(poly("-v^2 + u^3 + t^2*s^2 + s^3", ws));
    GradedQuotient R4(g, 4);
    Polynomial in_ideal = Q(3) * g.partials()[0] - Q(2) * g.partials()[2];
    CHECK(graded_component(in_ideal, 4) == in_ideal);
    for (const Q& c : R4.normal_form(in_ideal)) CHECK(c == 0);
    for (std::size_t i = 0; i < R4.dim(); ++i) {
        auto nf = R4.normal_form(Polynomial::monomial(ws, R4.representatives()[i]));
        for (std::size_t j = 0; j < nf.size(); ++j) CHECK(nf[j] == (i == j ? 1 : 0));
    }
}

TEST_CASE("regular Hilbert series") {
    HilbertSeries hs = hilbert_series_regular({2, 3, 1, 1}, 6);
    CHECK(hs.coefficients == std::vector<long>{1, 2, 4, 6, 8, 8, 8, 6, 4, 2, 1});
    CHECK(hs.to_string() == "1 + 2t + 4t^2 + 6t^3 + 8t^4 + 8t^5 + 8t^6 + 6t^7 + 4t^8 + 2t^9 + t^10");
    CHECK(hilbert_series_regular({1, 1}, 2).coefficients == std::vector<long>{1});
    HilbertSeries big = hilbert_series_regular({6, 9, 1, 1, 1}, 18);
    CHECK(big.coefficient(0) == 1);
    CHECK(big.coefficient(18) == 272);
    CHECK(big.coefficient(36) == 272);
    CHECK(big.coefficient(54) == 1);
    CHECK(big.coefficients == geometric_product({6, 9, 1, 1, 1}, 18));
    CHECK(hs.coefficients == geometric_product({2, 3, 1, 1}, 6));
    try {
        hilbert_series_regular({2, 6}, 6);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Hypothesis);
    }
    // (t^5 - 1)/(t^2 - 1) is not a polynomial.
    try {
        hilbert_series_regular({2, 3}, 7);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Hypothesis);
    }
}

TEST_CASE("Milnor numbers") {
    CHECK(milnor_number({2, 3, 1, 1}, 6) == 50);
    CHECK(milnor_number({1, 1, 1, 1}, 2) == 1);
    CHECK(milnor_number({6, 9, 1, 1, 1}, 18) == 9826);
}

TEST_CASE("quasismoothness certificates") {
    auto h = stuv({1, 1, 2, 3});
    QuasismoothCertificate qs = quasismooth_check(JacobianRing(poly("s^6 + s^4*u - t^6 + t^4*u + u^3 - v^2", h)));
    CHECK(qs.quasismooth);
    CHECK_FALSE(qs.dims.empty());
    auto p2 = stuv({3, 3, 4, 6});
    QuasismoothCertificate bad = quasismooth_check(JacobianRing(poly("-v^2 + u^3 + t^2*s^2", p2)));
    CHECK_FALSE(bad.quasismooth);
    CHECK_FALSE(bad.reason.empty());
    auto xy = WeightSystem::unit({"x", "y"});
    CHECK(quasismooth_check(JacobianRing(poly("x^2 + y^2", xy))).quasismooth);
}

TEST_CASE("Griffiths-Steenbrink numbers") {
    auto A = WeightSystem({6, 9, 1, 1, 1}, {"x", "y", "z0", "z1", "z2"});
    JacobianRing T(poly("y^2 + x^3 + z0^18 + z1^18 + z2^18", A));
    for (auto method : {HodgeMethod::ProductFormula, HodgeMethod::LinearAlgebra}) {
        PrimitiveHodge ph = gs_hodge_numbers(T, method);
        CHECK(ph.dimension == 3);
        CHECK(ph.h == std::vector<long>{1, 272, 272, 1});
        CHECK(ph.middle() == 546);
        CHECK(ph.euler_characteristic() == -542);
    }

    // Quartic K3: h^{2,0} = 1, h^{1,1}_prim = 19, e = 24.
    auto P3 = WeightSystem::unit({"x0", "x1", "x2", "x3"});
    PrimitiveHodge k3 = gs_hodge_numbers(JacobianRing(poly("x0^4 + x1^4 + x2^4 + x3^4", P3)), HodgeMethod::LinearAlgebra);
    CHECK(k3.h == std::vector<long>{1, 19, 1});
    CHECK(k3.euler_characteristic() == 24);

    // Plane cubic: genus one, e = 0.
    auto P2 = WeightSystem::unit({"x", "y", "z"});
    PrimitiveHodge cubic = gs_hodge_numbers(JacobianRing(poly("x^3 + y^3 + z^3", P2)), HodgeMethod::ProductFormula);
    CHECK(cubic.h == std::vector<long>{1, 1});
    CHECK(cubic.euler_characteristic() == 0);

    PrimitiveHodge conic = gs_hodge_numbers(JacobianRing(poly("x^2 + y^2 + z^2", P2)), HodgeMethod::ProductFormula);
    CHECK(conic.h == std::vector<long>{0, 0});

    // x1^2 + x2^2 + x3^(k+1) + x4^(2k+2) in P(k+1, k+1, 2, 1): h^{2,0} = 0, h^{1,1}_prim = k.
    for (int k = 1; k <= 6; ++k) {
        auto W = WeightSystem({k + 1, k + 1, 2, 1}, {"x1", "x2", "x3", "x4"});
        std::string f = "x1^2 + x2^2 + x3^" + std::to_string(k + 1) + " + x4^" + std::to_string(2 * k + 2);
        PrimitiveHodge ph = gs_hodge_numbers(JacobianRing(poly(f, W)), HodgeMethod::LinearAlgebra);
        CHECK(ph.h[0] == 0);
        CHECK(ph.h[1] == k);
    }

    auto p2 = stuv({3, 3, 4, 6});
    try {
        gs_hodge_numbers(JacobianRing(poly("-v^2 + u^3 + t^2*s^2", p2)), HodgeMethod::ProductFormula);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotQuasismooth);
    }
}

TEST_CASE("tilde quotients") {
    auto ws = stuv();
    JacobianRing g(poly("-v^2 + u^3 + t^2*s^2 + s^3", ws));
    TildeQuotient T(g, {poly("t^4", ws), poly("u*t^2", ws)});
    GradedQuotient R4 = T.piece(4);
    CHECK(R4.dim() == 2);
    auto reps = rendered(R4.representatives(), ws);
    std::sort(reps.begin(), reps.end());
    CHECK(reps == std::vector<std::string>{"s*u", "s^2"});

    std::vector<Polynomial> all;
    GradedQuotient full(g, 4);
    for (const auto& m : full.representatives()) all.push_back(Polynomial::monomial(ws, m));
    CHECK(TildeQuotient(g, all).piece(4).dim() == 0);

    // Two transversal A2 curves meeting: every class of degree 4 is lifted.
    auto p2 = stuv({1, 2, 2, 3});
    JacobianRing g2(poly("-v^2 + u^3 - s^2*t^2", p2));
    const long deg = 2 * g2.degree() - p2.total();
    GradedQuotient R2(g2, deg);
    CHECK(deg == 4);
    CHECK(R2.dim() == 4);
    std::vector<Polynomial> lifts2;
    for (const auto& m : R2.representatives()) lifts2.push_back(Polynomial::monomial(p2, m));
    CHECK(TildeQuotient(g2, lifts2).piece(deg).dim() == 0);

    CHECK_THROWS_AS(TildeQuotient(g, {poly("t^3", ws)}), Error);
}

TEST_CASE("tilde pieces never exceed Jacobian pieces") {
    auto ws = stuv();
    JacobianRing g(poly("-v^2 + u^3 + t^2*s^2 + s^3", ws));
    TildeQuotient T(g, {poly("t^4", ws), poly("u*t^2", ws)});
    const long top = 2 * g.degree() - ws.total();
    for (long k = 0; k <= 12; ++k) {
        CHECK(T.piece(k).dim() <= GradedQuotient(g, k).dim());
        if (k < top) CHECK(T.piece(k).dim() == GradedQuotient(g, k).dim());
    }
}

TEST_CASE("local Milnor algebras and ADE types") {
    auto L = WeightSystem::unit({"t", "u", "v"});
    LocalMilnorAlgebra a2(poly("v^2 + u^3 + t^2", L));
    CHECK(a2.mu() == 2);
    CHECK(rendered(a2.basis(), L) == std::vector<std::string>{"1", "u"});
    CHECK(LocalMilnorAlgebra(poly("v^2 + u^2 + t^2", L)).mu() == 1);
    CHECK(LocalMilnorAlgebra(poly("v^2 + u^2 + t^2 + u^5*t", L)).mu() == 1);

    struct Row {
        const char* g;
        const char* type;
    } rows[] = {
        {"t^2 + u^2 + v^2", "A1"},          {"t^2 + u^2 + v^5", "A4"},
        {"t^2 + u^2*v + v^3", "D4"},        {"t^2 + u^2*v + v^5", "D6"},
        {"t^2 + u^3 + v^4", "E6"},          {"t^2 + u^3 + u*v^3", "E7"},
        {"t^2 + u^3 + v^5", "E8"},          {"t^2 + u^2*v + v^3 + v^4*u", "D4"},
    };
    for (const auto& r : rows) {
        Polynomial g = poly(r.g, L);
        LocalMilnorAlgebra M(g);
        CHECK(classify_ade(g, M.mu()).name() == r.type);
    }
    Polynomial t333 = poly("t^3 + u^3 + v^3", L);
    CHECK_FALSE(classify_ade(t333, LocalMilnorAlgebra(t333).mu()).simple);

    try {
        LocalMilnorAlgebra bad(poly("t^2 + u^2", L));
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Unsupported);
    }
    CHECK_THROWS_AS(LocalMilnorAlgebra(poly("t + u^2 + v^2", L)), Error);
}

TEST_CASE("Milnor algebra coordinates") {
    auto L = WeightSystem::unit({"t", "u", "v"});
    LocalMilnorAlgebra a3(poly("v^2 + u^4 + t^2", L));
    CHECK(a3.mu() == 3);
    // u^3 lies in the Jacobian ideal; t*u does too.
    for (const Q& c : a3.coordinates(poly("u^3 + 5*t*u", L))) CHECK(c == 0);
    auto c = a3.coordinates(poly("2 + u^2", L));
    REQUIRE(c.size() == 3);
    CHECK(c[0] == 2);
}
