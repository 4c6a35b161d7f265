#include "mwrank/upoly.hpp"

#include <algorithm>
#include <cstdint>
#include <random>

#include "mwrank/errors.hpp"

namespace mw {

UPoly::UPoly(std::vector<Q> coeffs) : c_(std::move(coeffs)) { trim(); }

UPoly UPoly::constant(const Q& c) { return UPoly(std::vector<Q>{c}); }
UPoly UPoly::x() { return UPoly(std::vector<Q>{Q(0), Q(1)}); }
UPoly UPoly::linear_root(const Q& r) { return UPoly(std::vector<Q>{Q(-r), Q(1)}); }

void UPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Q UPoly::eval(const Q& t) const {
    Q acc = 0;
    for (int i = degree(); i >= 0; --i) acc = acc * t + c_[i];
    return acc;
}

UPoly UPoly::derivative() const {
    std::vector<Q> d;
    for (int i = 1; i <= degree(); ++i) d.push_back(c_[i] * i);
    return UPoly(std::move(d));
}

UPoly UPoly::monic() const {
    if (is_zero()) return *this;
    UPoly r = *this;
    Q l = lc();
    for (auto& c : r.c_) c /= l;
    return r;
}

UPoly UPoly::primitive() const {
    if (is_zero()) return *this;
    Z l = 1;
    for (const auto& c : c_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    std::vector<Z> ints;
    Z g = 0;
    for (const auto& c : c_) {
        Z v = c.get_num() * (l / c.get_den());
        ints.push_back(v);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    }
    if (ints.back() < 0) g = -g;
    std::vector<Q> out;
    for (auto& v : ints) out.emplace_back(Z(v / g));
    return UPoly(std::move(out));
}

UPoly UPoly::operator-() const {
    UPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

std::string UPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::string s;
    for (int i = degree(); i >= 0; --i) {
        if (c_[i] == 0) continue;
        Q c = c_[i];
        bool neg = c < 0;
        if (neg) c = -c;
        if (s.empty()) s += neg ? "-" : "";
        else s += neg ? " - " : " + ";
        std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
        if (mono.empty()) s += mw::to_string(c);
        else if (c == 1) s += mono;
        else s += mw::to_string(c) + "*" + mono;
    }
    return s;
}

UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<Q> r(std::max(a.coeffs().size(), b.coeffs().size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(int(i)) + b.coeff(int(i));
    return UPoly(std::move(r));
}

UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }

UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return UPoly();
    std::vector<Q> r(a.coeffs().size() + b.coeffs().size() - 1);
    for (std::size_t i = 0; i < a.coeffs().size(); ++i)
        for (std::size_t j = 0; j < b.coeffs().size(); ++j) r[i + j] += a.coeffs()[i] * b.coeffs()[j];
    return UPoly(std::move(r));
}

UPoly operator*(const Q& s, const UPoly& a) {
    std::vector<Q> r = a.coeffs();
    for (auto& c : r) c *= s;
    return UPoly(std::move(r));
}

void divmod(const UPoly& a, const UPoly& b, UPoly& quot, UPoly& rem) {
    if (b.is_zero()) throw Error(ErrorKind::Internal, "univariate division by zero");
    std::vector<Q> r = a.coeffs();
    int db = b.degree();
    std::vector<Q> q(std::max(0, a.degree() - db + 1));
    Q inv = 1 / b.lc();
    for (int i = a.degree(); i >= db; --i) {
        if (r[i] == 0) continue;
        Q f = r[i] * inv;
        q[i - db] = f;
        for (int j = 0; j <= db; ++j) r[i - db + j] -= f * b.coeffs()[j];
    }
    r.resize(std::max(0, db));
    quot = UPoly(std::move(q));
    rem = UPoly(std::move(r));
}

UPoly operator/(const UPoly& a, const UPoly& b) {
    UPoly q, r;
    divmod(a, b, q, r);
    return q;
}

UPoly operator%(const UPoly& a, const UPoly& b) {
    UPoly q, r;
    divmod(a, b, q, r);
    return r;
}

namespace {
UPoly modular_gcd(const UPoly& a, const UPoly& b);
}

UPoly gcd(const UPoly& a, const UPoly& b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    if (a.degree() == 0 || b.degree() == 0) return UPoly::constant(1);
    return modular_gcd(a.primitive(), b.primitive());
}

UPoly squarefree_part(const UPoly& a) {
    if (a.degree() <= 0) return a.is_zero() ? a : UPoly::constant(1);
    return (a / gcd(a, a.derivative())).monic();
}

namespace {

// Arithmetic modulo a prime below 2^62.
using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) { return u64((u128)a * b % p); }
u64 powmod(u64 a, u64 e, u64 p) {
    u64 r = 1;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}
u64 invmod(u64 a, u64 p) { return powmod(a, p - 2, p); }

using ModPoly = std::vector<u64>;

void mtrim(ModPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

ModPoly mmod(ModPoly a, const ModPoly& b, u64 p) {
    int db = int(b.size()) - 1;
    u64 inv = invmod(b.back(), p);
    for (int i = int(a.size()) - 1; i >= db; --i) {
        if (a[i] == 0) continue;
        u64 f = mulmod(a[i], inv, p);
        for (int j = 0; j <= db; ++j) a[i - db + j] = (a[i - db + j] + p - mulmod(f, b[j], p)) % p;
    }
    a.resize(std::max(0, db));
    mtrim(a);
    return a;
}

ModPoly mmul(const ModPoly& a, const ModPoly& b, u64 p) {
    if (a.empty() || b.empty()) return {};
    ModPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
    }
    mtrim(r);
    return r;
}

ModPoly mgcd(ModPoly a, ModPoly b, u64 p) {
    while (!b.empty()) {
        ModPoly r = mmod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        u64 inv = invmod(a.back(), p);
        for (auto& c : a) c = mulmod(c, inv, p);
    }
    return a;
}

ModPoly mpowmod(ModPoly base, u64 e, const ModPoly& f, u64 p) {
    ModPoly r{1};
    base = mmod(base, f, p);
    while (e) {
        if (e & 1) r = mmod(mmul(r, base, p), f, p);
        base = mmod(mmul(base, base, p), f, p);
        e >>= 1;
    }
    return r;
}

ModPoly msub(ModPoly a, const ModPoly& b, u64 p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
    mtrim(a);
    return a;
}

// Roots of a monic product of distinct linear factors, by equal-degree splitting.
void split_roots(const ModPoly& g, u64 p, std::mt19937_64& rng, std::vector<u64>& out) {
    int deg = int(g.size()) - 1;
    if (deg <= 0) return;
    if (deg == 1) {
        out.push_back((p - mulmod(g[0], invmod(g[1], p), p)) % p);
        return;
    }
    for (;;) {
        u64 a = rng() % p;
        ModPoly h = mpowmod(ModPoly{a, 1}, (p - 1) / 2, g, p);
        h = msub(h, ModPoly{1}, p);
        ModPoly d = mgcd(g, h, p);
        int dd = int(d.size()) - 1;
        if (dd > 0 && dd < deg) {
            split_roots(d, p, rng, out);
            // g / d
            ModPoly q(deg - dd + 1, 0), r = g;
            for (int i = deg; i >= dd; --i) {
                u64 f = r[i];
                q[i - dd] = f;
                if (!f) continue;
                for (int j = 0; j <= dd; ++j) r[i - dd + j] = (r[i - dd + j] + p - mulmod(f, d[j], p)) % p;
            }
            split_roots(q, p, rng, out);
            return;
        }
    }
}

bool is_probable_prime(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL})
        if (n % q == 0) return n == q;
    u64 d = n - 1;
    int s = 0;
    while (!(d & 1)) d >>= 1, ++s;
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool comp = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                comp = false;
                break;
            }
        }
        if (comp) return false;
    }
    return true;
}

u64 reduce_mod(const Z& z, u64 p) { return mpz_fdiv_ui(z.get_mpz_t(), p); }

ModPoly reduce_poly(const UPoly& f, u64 p) {
    ModPoly r;
    for (const auto& c : f.coeffs()) r.push_back(reduce_mod(c.get_num(), p));
    mtrim(r);
    return r;
}

// Multi-prime gcd of primitive integer polynomials. The image is scaled by
// gcd of the leading coefficients, lifted by CRT in the symmetric range and
// accepted once it stabilizes and divides both inputs.
UPoly modular_gcd(const UPoly& A, const UPoly& B) {
    Z la = A.lc().get_num(), lb = B.lc().get_num(), g;
    mpz_gcd(g.get_mpz_t(), la.get_mpz_t(), lb.get_mpz_t());
    int best = std::min(A.degree(), B.degree()) + 1;
    std::vector<Z> acc;
    Z M = 1;
    UPoly last;
    for (u64 p = (1ULL << 61) - 1;; p -= 2) {
        if (!is_probable_prime(p)) continue;
        if (reduce_mod(la, p) == 0 || reduce_mod(lb, p) == 0) continue;
        ModPoly gp = mgcd(reduce_poly(A, p), reduce_poly(B, p), p);
        int d = int(gp.size()) - 1;
        if (d == 0) return UPoly::constant(1);
        if (d > best) continue;
        u64 gm = reduce_mod(g, p);
        for (auto& c : gp) c = mulmod(c, gm, p);
        Z pz(static_cast<unsigned long>(p));
        if (d < best) {
            best = d;
            acc.assign(gp.size(), Z(0));
            for (std::size_t i = 0; i < gp.size(); ++i) acc[i] = Z(static_cast<unsigned long>(gp[i]));
            M = pz;
            last = UPoly();
            continue;
        }
        Z Minv;
        mpz_invert(Minv.get_mpz_t(), Z(M % pz).get_mpz_t(), pz.get_mpz_t());
        for (std::size_t i = 0; i < gp.size(); ++i) {
            Z r2 = Z(static_cast<unsigned long>(gp[i]));
            Z t = ((r2 - acc[i]) % pz) * Minv % pz;
            if (t < 0) t += pz;
            acc[i] += M * t;
        }
        M *= pz;
        Z half = M / 2;
        std::vector<Q> sym;
        for (const auto& c : acc) sym.emplace_back(c > half ? Z(c - M) : c);
        UPoly H = UPoly(std::move(sym)).primitive();
        if (H == last && (A % H).is_zero() && (B % H).is_zero()) return H.monic();
        last = H;
    }
}

// Rational reconstruction of r mod m with |num|,|den| <= bound.
bool rational_reconstruct(const Z& r, const Z& m, const Z& bound, Q& out) {
    Z r0 = m, r1 = r, t0 = 0, t1 = 1;
    while (r1 > bound) {
        Z q = r0 / r1;
        Z tmp = r0 - q * r1;
        r0 = r1;
        r1 = tmp;
        tmp = t0 - q * t1;
        t0 = t1;
        t1 = tmp;
    }
    if (t1 == 0 || abs(t1) > bound) return false;
    out = Q(r1, t1);
    out.canonicalize();
    return true;
}

}  // namespace

std::vector<Q> rational_roots(const UPoly& a) {
    std::vector<Q> roots;
    if (a.degree() <= 0) return roots;
    UPoly f = squarefree_part(a).primitive();
    if (f.coeff(0) == 0) {
        roots.push_back(Q(0));
        f = (f / UPoly::x()).primitive();
    }
    if (f.degree() <= 0) return roots;
    if (f.degree() == 1) {
        Q r = -f.coeff(0) / f.coeff(1);
        roots.push_back(r);
        std::sort(roots.begin(), roots.end());
        return roots;
    }
    std::vector<Z> zc;
    for (const auto& c : f.coeffs()) zc.push_back(c.get_num());
    const int n = f.degree();

    // Prime not dividing the leading coefficient, with f squarefree mod p.
    u64 p = (1ULL << 61) - 1;
    ModPoly fm;
    for (;; p -= 2) {
        if (!is_probable_prime(p)) continue;
        if (reduce_mod(zc.back(), p) == 0) continue;
        fm.clear();
        for (const auto& c : zc) fm.push_back(reduce_mod(c, p));
        ModPoly df;
        for (int i = 1; i <= n; ++i) df.push_back(mulmod(fm[i], u64(i) % p, p));
        mtrim(df);
        ModPoly g = mgcd(fm, df, p);
        if (g.size() == 1) break;
    }
    // Roots mod p: gcd(f, x^p - x).
    ModPoly xp = mpowmod(ModPoly{0, 1}, p, fm, p);
    ModPoly g = mgcd(fm, msub(xp, ModPoly{0, 1}, p), p);
    std::vector<u64> mroots;
    std::mt19937_64 rng(0x5eedULL);
    split_roots(g, p, rng, mroots);

    // Lift precision: p^k > 2 * |c0| * |cn|.
    Z bound = abs(zc.front()) > abs(zc.back()) ? abs(zc.front()) : abs(zc.back());
    Z need = 2 * bound * bound + 1;
    Z pz(std::to_string(p));
    UPoly df = f.derivative();
    std::vector<Z> dzc;
    for (const auto& c : df.coeffs()) dzc.push_back(c.get_num());
    auto eval_mod = [](const std::vector<Z>& c, const Z& x, const Z& m) {
        Z acc = 0;
        for (int i = int(c.size()) - 1; i >= 0; --i) acc = (acc * x + c[i]) % m;
        if (acc < 0) acc += m;
        return acc;
    };
    for (u64 r0 : mroots) {
        Z r(std::to_string(r0));
        Z m = pz;
        while (m <= need) {
            Z m2 = m * m;
            Z fv = eval_mod(zc, r, m2);
            Z dv = eval_mod(dzc, r, m2);
            Z inv;
            if (mpz_invert(inv.get_mpz_t(), dv.get_mpz_t(), m2.get_mpz_t()) == 0) break;
            r = (r - fv * inv) % m2;
            if (r < 0) r += m2;
            m = m2;
        }
        Z sb;
        mpz_sqrt(sb.get_mpz_t(), Z(m / 2).get_mpz_t());
        Q cand;
        if (rational_reconstruct(r, m, sb, cand) && f.eval(cand) == 0) roots.push_back(cand);
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

UPoly irrational_part(const UPoly& a) {
    if (a.degree() <= 0) return UPoly::constant(1);
    UPoly f = squarefree_part(a);
    for (const auto& r : rational_roots(f)) f = f / UPoly::linear_root(r);
    return f.monic();
}

UPoly interpolate(const std::vector<Q>& xs, const std::vector<Q>& ys) {
    const std::size_t n = xs.size();
    std::vector<Q> dd = ys;
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = n - 1; i >= j; --i) dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j]);
    UPoly result;
    for (std::size_t k = n; k-- > 0;) {
        result = result * UPoly::linear_root(xs[k]) + UPoly::constant(dd[k]);
    }
    return result;
}

}  // namespace mw
