#include "mwrank/polynomial.hpp"

#include <algorithm>

#include "mwrank/errors.hpp"
#include "mwrank/upoly.hpp"

namespace mw {

long weighted_degree(const Monomial& m, const WeightSystem& ws) {
    long d = 0;
    for (std::size_t i = 0; i < m.size(); ++i) d += long(m[i]) * ws.weight(i);
    return d;
}

long total_degree(const Monomial& m) {
    long d = 0;
    for (int e : m) d += e;
    return d;
}

bool canonical_less(const Monomial& a, const Monomial& b, const WeightSystem& ws) {
    long da = weighted_degree(a, ws), db = weighted_degree(b, ws);
    if (da != db) return da < db;
    return a < b;
}

Polynomial::Polynomial(WeightSystem ws) : ws_(std::move(ws)) {}

Polynomial Polynomial::constant(const WeightSystem& ws, const Q& c) {
    Polynomial p(ws);
    p.add_term(Monomial(ws.size(), 0), c);
    return p;
}

Polynomial Polynomial::variable(const WeightSystem& ws, std::size_t i) {
    Monomial m(ws.size(), 0);
    m.at(i) = 1;
    return monomial(ws, m);
}

Polynomial Polynomial::monomial(const WeightSystem& ws, const Monomial& m, const Q& c) {
    if (m.size() != ws.size()) throw Error(ErrorKind::Context, "monomial length does not match ring");
    Polynomial p(ws);
    p.add_term(m, c);
    return p;
}

Q Polynomial::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Q(0) : it->second;
}

bool Polynomial::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
}

Q Polynomial::constant_term() const { return coeff(Monomial(ws_.size(), 0)); }

void Polynomial::add_term(const Monomial& m, const Q& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Polynomial Polynomial::with_ring(const WeightSystem& ws) const {
    if (ws.size() != ws_.size()) throw Error(ErrorKind::Context, "ring change needs equal variable count");
    Polynomial p(ws);
    p.terms_ = terms_;
    return p;
}

Polynomial Polynomial::operator-() const {
    Polynomial r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

static void check_same_ring(const Polynomial& a, const Polynomial& b) {
    if (a.ring() != b.ring())
        throw Error(ErrorKind::Context, "weight systems differ: " + a.ring().describe() + " vs " + b.ring().describe());
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    check_same_ring(*this, o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    check_same_ring(*this, o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Polynomial& Polynomial::operator*=(const Q& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
}

Polynomial Polynomial::pow(unsigned e) const {
    Polynomial result = constant(ws_, 1);
    Polynomial base = *this;
    while (e) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

bool Polynomial::operator==(const Polynomial& o) const { return ws_ == o.ws_ && terms_ == o.terms_; }

long Polynomial::max_weighted_degree() const {
    if (terms_.empty()) throw Error(ErrorKind::UndefinedDegree, "zero polynomial has no degree");
    long d = weighted_degree(terms_.begin()->first, ws_);
    for (const auto& [m, c] : terms_) d = std::max(d, weighted_degree(m, ws_));
    return d;
}

long Polynomial::min_weighted_degree() const {
    if (terms_.empty()) throw Error(ErrorKind::UndefinedDegree, "zero polynomial has no degree");
    long d = weighted_degree(terms_.begin()->first, ws_);
    for (const auto& [m, c] : terms_) d = std::min(d, weighted_degree(m, ws_));
    return d;
}

int Polynomial::degree_in(std::size_t var) const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m[var]);
    return d;
}

std::pair<Monomial, Q> Polynomial::leading_term() const {
    if (terms_.empty()) throw Error(ErrorKind::UndefinedDegree, "zero polynomial has no leading term");
    auto best = terms_.begin();
    for (auto it = terms_.begin(); it != terms_.end(); ++it)
        if (canonical_less(best->first, it->first, ws_)) best = it;
    return *best;
}

Q Polynomial::evaluate(const std::vector<Q>& point) const {
    if (point.size() != ws_.size()) throw Error(ErrorKind::Context, "evaluation point has wrong length");
    Q acc = 0;
    for (const auto& [m, c] : terms_) {
        Q t = c;
        for (std::size_t i = 0; i < m.size() && t != 0; ++i)
            for (int k = 0; k < m[i]; ++k) t *= point[i];
        acc += t;
    }
    return acc;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    Polynomial r = a;
    r += b;
    return r;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    Polynomial r = a;
    r -= b;
    return r;
}

static Polynomial mul_impl(const Polynomial& a, const Polynomial& b, const long* max_degree) {
    check_same_ring(a, b);
    Polynomial r(a.ring());
    const auto& ws = a.ring();
    Monomial m(ws.size());
    for (const auto& [ma, ca] : a.terms()) {
        long da = max_degree ? weighted_degree(ma, ws) : 0;
        for (const auto& [mb, cb] : b.terms()) {
            if (max_degree && da + weighted_degree(mb, ws) > *max_degree) continue;
            for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
            r.add_term(m, ca * cb);
        }
    }
    return r;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) { return mul_impl(a, b, nullptr); }

Polynomial mul_truncated(const Polynomial& a, const Polynomial& b, long max_degree) {
    return mul_impl(a, b, &max_degree);
}

Polynomial operator*(const Q& c, const Polynomial& a) {
    Polynomial r = a;
    r *= c;
    return r;
}

WeightedDegree weighted_degree(const Polynomial& f) {
    if (f.is_zero()) throw Error(ErrorKind::UndefinedDegree, "zero polynomial has no weighted degree");
    long d = weighted_degree(f.terms().begin()->first, f.ring());
    for (const auto& [m, c] : f.terms())
        if (weighted_degree(m, f.ring()) != d) return {false, 0};
    return {true, d};
}

Polynomial partial_derivative(const Polynomial& f, std::size_t i) {
    if (i >= f.ring().size()) throw Error(ErrorKind::Context, "variable index out of range");
    Polynomial r(f.ring());
    for (const auto& [m, c] : f.terms()) {
        if (m[i] == 0) continue;
        Monomial n = m;
        n[i] -= 1;
        r.add_term(n, c * m[i]);
    }
    return r;
}

Polynomial graded_component(const Polynomial& f, long d) {
    Polynomial r(f.ring());
    for (const auto& [m, c] : f.terms())
        if (weighted_degree(m, f.ring()) == d) r.add_term(m, c);
    return r;
}

static Polynomial substitute_impl(const Polynomial& f, const std::vector<Polynomial>& images,
                                  const long* max_degree) {
    if (images.size() != f.ring().size())
        throw Error(ErrorKind::Context, "substitution needs one image per variable");
    const WeightSystem& target = images.at(0).ring();
    for (const auto& im : images)
        if (im.ring() != target) throw Error(ErrorKind::Context, "substitution images live in different rings");
    std::vector<std::vector<Polynomial>> powers(images.size());
    auto power = [&](std::size_t i, int e) -> const Polynomial& {
        auto& cache = powers[i];
        if (cache.empty()) cache.push_back(Polynomial::constant(target, 1));
        while (int(cache.size()) <= e) {
            cache.push_back(max_degree ? mul_truncated(cache.back(), images[i], *max_degree)
                                       : cache.back() * images[i]);
        }
        return cache[e];
    };
    Polynomial result(target);
    for (const auto& [m, c] : f.terms()) {
        Polynomial t = Polynomial::constant(target, c);
        for (std::size_t i = 0; i < m.size() && !t.is_zero(); ++i)
            if (m[i] > 0) t = max_degree ? mul_truncated(t, power(i, m[i]), *max_degree) : t * power(i, m[i]);
        result += t;
    }
    return result;
}

Polynomial substitute(const Polynomial& f, const std::vector<Polynomial>& images) {
    return substitute_impl(f, images, nullptr);
}

Polynomial substitute_truncated(const Polynomial& f, const std::vector<Polynomial>& images, long max_degree) {
    return substitute_impl(f, images, &max_degree);
}

static void basis_rec(const WeightSystem& ws, std::size_t i, long remaining, Monomial& cur,
                      std::vector<Monomial>& out) {
    if (i + 1 == ws.size()) {
        if (remaining % ws.weight(i) == 0) {
            cur[i] = int(remaining / ws.weight(i));
            out.push_back(cur);
        }
        return;
    }
    for (long e = 0; e * ws.weight(i) <= remaining; ++e) {
        cur[i] = int(e);
        basis_rec(ws, i + 1, remaining - e * ws.weight(i), cur, out);
    }
    cur[i] = 0;
}

std::vector<Monomial> monomial_basis(const WeightSystem& ws, long d) {
    std::vector<Monomial> out;
    if (d < 0) return out;
    Monomial cur(ws.size(), 0);
    basis_rec(ws, 0, d, cur, out);
    return out;
}

std::optional<Polynomial> divide_exact(const Polynomial& a, const Polynomial& b) {
    check_same_ring(a, b);
    if (b.is_zero()) throw Error(ErrorKind::Internal, "division by the zero polynomial");
    Polynomial quot(a.ring()), rem = a;
    // Lexicographically largest term leads; std::map keeps lex order.
    const auto& [lb, cb] = *b.terms().rbegin();
    while (!rem.is_zero()) {
        const auto& [lr, cr] = *rem.terms().rbegin();
        Monomial q(lr.size());
        for (std::size_t i = 0; i < q.size(); ++i) {
            q[i] = lr[i] - lb[i];
            if (q[i] < 0) return std::nullopt;
        }
        Polynomial t = Polynomial::monomial(a.ring(), q, cr / cb);
        quot += t;
        rem -= t * b;
    }
    return quot;
}

Q content(const Polynomial& f) {
    if (f.is_zero()) return Q(0);
    Z l = 1, g = 0;
    for (const auto& [m, c] : f.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    for (const auto& [m, c] : f.terms()) {
        Z v = c.get_num() * (l / c.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    }
    Q r(g, l);
    r.canonicalize();
    return r;
}

Polynomial canonical_associate(const Polynomial& f) {
    if (f.is_zero()) return f;
    Q c = content(f);
    if (f.leading_term().second < 0) c = -c;
    Polynomial r = f;
    r *= Q(1) / c;
    return r;
}

namespace {

using Coeffs = std::vector<Polynomial>;  // index = power of the main variable

Coeffs split(const Polynomial& f, std::size_t v) {
    Coeffs out(f.degree_in(v) + 1, Polynomial(f.ring()));
    for (const auto& [m, c] : f.terms()) {
        Monomial n = m;
        int e = n[v];
        n[v] = 0;
        out[e].add_term(n, c);
    }
    return out;
}

int last_var(const Polynomial& a, const Polynomial& b) {
    for (int v = int(a.ring().size()) - 1; v >= 0; --v)
        if (a.involves(v) || b.involves(v)) return v;
    return -1;
}

Polynomial gcd_rec(const Polynomial& a, const Polynomial& b);

Polynomial content_in(const Polynomial& f, std::size_t v) {
    Polynomial g(f.ring());
    for (const auto& c : split(f, v)) {
        if (c.is_zero()) continue;
        g = g.is_zero() ? canonical_associate(c) : gcd_rec(g, c);
        if (g.is_constant()) break;
    }
    return g;
}

Polynomial prem(const Polynomial& a, const Polynomial& b, std::size_t v) {
    Coeffs bc = split(b, v);
    const int n = int(bc.size()) - 1;
    const Polynomial& lb = bc.back();
    Polynomial r = a;
    Monomial shift(a.ring().size(), 0);
    while (!r.is_zero()) {
        int dr = r.degree_in(v);
        if (dr < n) break;
        Coeffs rc = split(r, v);
        shift[v] = dr - n;
        Polynomial t = rc.back() * Polynomial::monomial(a.ring(), shift) * b;
        r = lb * r - t;
        r = canonical_associate(r);
    }
    return r;
}

// Evaluates every variable except v at small integers; the results bound the
// degree in v of the gcd whenever both leading coefficients survive.
bool certified_coprime_in(const Polynomial& a, const Polynomial& b, std::size_t v) {
    const auto& ws = a.ring();
    Coeffs ac = split(a, v), bc = split(b, v);
    static const int trial[][6] = {{3, 5, 7, 11, 13, 17}, {-2, 9, 4, -7, 19, 6}, {10, -3, 21, 2, -5, 14}};
    for (const auto& t : trial) {
        std::vector<Q> pt(ws.size());
        for (std::size_t i = 0; i < ws.size(); ++i) pt[i] = t[i % 6];
        auto to_u = [&](const Coeffs& cs) {
            std::vector<Q> u;
            for (const auto& c : cs) u.push_back(c.evaluate(pt));
            return UPoly(u);
        };
        UPoly ua = to_u(ac), ub = to_u(bc);
        if (ua.degree() != int(ac.size()) - 1 || ub.degree() != int(bc.size()) - 1) continue;
        if (gcd(ua, ub).degree() == 0) return true;
        return false;
    }
    return false;
}

Polynomial gcd_rec(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero()) return canonical_associate(b);
    if (b.is_zero()) return canonical_associate(a);
    const auto& ws = a.ring();
    int v = last_var(a, b);
    if (v < 0) return Polynomial::constant(ws, 1);
    if (!a.involves(v)) return gcd_rec(a, content_in(b, v));
    if (!b.involves(v)) return gcd_rec(content_in(a, v), b);

    Polynomial ca = content_in(a, v), cb = content_in(b, v);
    Polynomial g = gcd_rec(ca, cb);
    Polynomial A = canonical_associate(*divide_exact(a, ca));
    Polynomial B = canonical_associate(*divide_exact(b, cb));
    if (A.degree_in(v) < B.degree_in(v)) std::swap(A, B);
    if (certified_coprime_in(A, B, v)) return canonical_associate(g);
    for (;;) {
        Polynomial R = prem(A, B, v);
        if (R.is_zero()) break;
        if (R.degree_in(v) == 0) {
            B = Polynomial::constant(ws, 1);
            break;
        }
        A = std::move(B);
        B = canonical_associate(*divide_exact(R, content_in(R, v)));
    }
    return canonical_associate(g * B);
}

}  // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
    check_same_ring(a, b);
    if (a.is_zero() && b.is_zero()) throw Error(ErrorKind::UndefinedDegree, "gcd(0, 0) is undefined");
    return gcd_rec(a, b);
}

Polynomial squarefree_part(const Polynomial& f) {
    if (f.is_zero()) throw Error(ErrorKind::UndefinedDegree, "squarefree part of zero");
    if (f.is_constant()) return Polynomial::constant(f.ring(), 1);
    Polynomial g = f;
    for (std::size_t i = 0; i < f.ring().size(); ++i) {
        Polynomial d = partial_derivative(f, i);
        if (d.is_zero()) continue;
        g = gcd(g, d);
        if (g.is_constant()) break;
    }
    return canonical_associate(*divide_exact(f, g));
}

std::string render_monomial(const Monomial& m, const WeightSystem& ws) {
    std::string s;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!s.empty()) s += "*";
        s += ws.name(i);
        if (m[i] > 1) s += "^" + std::to_string(m[i]);
    }
    return s.empty() ? "1" : s;
}

std::string render(const Polynomial& f) {
    if (f.is_zero()) return "0";
    std::vector<std::pair<Monomial, Q>> terms(f.terms().begin(), f.terms().end());
    const auto& ws = f.ring();
    std::sort(terms.begin(), terms.end(),
              [&](const auto& x, const auto& y) { return canonical_less(y.first, x.first, ws); });
    std::string s;
    for (const auto& [m, c0] : terms) {
        Q c = c0;
        bool neg = c < 0;
        if (neg) c = -c;
        if (s.empty()) s += neg ? "-" : "";
        else s += neg ? " - " : " + ";
        bool unit = std::all_of(m.begin(), m.end(), [](int e) { return e == 0; });
        std::string mono = render_monomial(m, ws);
        if (unit) s += to_string(c);
        else if (c == 1) s += mono;
        else s += to_string(c) + "*" + mono;
    }
    return s;
}

}  // namespace mw
