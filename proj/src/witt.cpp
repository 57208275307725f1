#include "drw/witt.hpp"

#include <algorithm>

namespace drw {

namespace {

void trimKey(std::vector<unsigned>& k) {
    while (!k.empty() && k.back() == 0) k.pop_back();
}

} // namespace

MPolyZ MPolyZ::constant(const Int& c) {
    MPolyZ p;
    if (c != 0) p.terms[{}] = c;
    return p;
}

MPolyZ MPolyZ::var(unsigned idx, unsigned exp) {
    MPolyZ p;
    if (exp == 0) return constant(Int(1));
    std::vector<unsigned> k(idx + 1, 0);
    k[idx] = exp;
    p.terms[std::move(k)] = 1;
    return p;
}

MPolyZ MPolyZ::operator+(const MPolyZ& o) const {
    MPolyZ r = *this;
    for (const auto& [k, c] : o.terms) {
        auto it = r.terms.find(k);
        if (it == r.terms.end()) {
            r.terms.emplace(k, c);
        } else {
            it->second += c;
            if (it->second == 0) r.terms.erase(it);
        }
    }
    return r;
}

MPolyZ MPolyZ::operator-(const MPolyZ& o) const { return *this + o.scaled(Int(-1)); }

MPolyZ MPolyZ::operator*(const MPolyZ& o) const {
    MPolyZ r;
    for (const auto& [k1, c1] : terms)
        for (const auto& [k2, c2] : o.terms) {
            std::vector<unsigned> k(std::max(k1.size(), k2.size()), 0);
            for (std::size_t i = 0; i < k1.size(); ++i) k[i] += k1[i];
            for (std::size_t i = 0; i < k2.size(); ++i) k[i] += k2[i];
            trimKey(k);
            auto it = r.terms.find(k);
            if (it == r.terms.end()) {
                Int c = c1 * c2;
                if (c != 0) r.terms.emplace(std::move(k), std::move(c));
            } else {
                it->second += c1 * c2;
                if (it->second == 0) r.terms.erase(it);
            }
        }
    return r;
}

MPolyZ MPolyZ::pow(unsigned e) const {
    MPolyZ r = constant(Int(1));
    MPolyZ base = *this;
    while (e > 0) {
        if (e & 1u) r = r * base;
        e >>= 1u;
        if (e > 0) base = base * base;
    }
    return r;
}

MPolyZ MPolyZ::scaled(const Int& c) const {
    MPolyZ r;
    if (c == 0) return r;
    for (const auto& [k, c0] : terms) r.terms.emplace(k, c0 * c);
    return r;
}

MPolyZ MPolyZ::divExact(const Int& c) const {
    MPolyZ r;
    for (const auto& [k, c0] : terms) {
        if (c0 % c != 0) throw Error("universal polynomial division not exact");
        r.terms.emplace(k, c0 / c);
    }
    return r;
}

WittPolynomialCache& WittPolynomialCache::instance() {
    static WittPolynomialCache c;
    return c;
}

namespace {

// ghost polynomial w_i over the x-slots (even var ids), optionally y-slots
MPolyZ ghostPoly(const Int& p, unsigned i, bool ySlot) {
    MPolyZ g;
    for (unsigned j = 0; j <= i; ++j) {
        unsigned long e = mpz_get_ui(pow_int(p, i - j).get_mpz_t());
        MPolyZ t = MPolyZ::var(2 * j + (ySlot ? 1 : 0), static_cast<unsigned>(e));
        g = g + t.scaled(pow_int(p, j));
    }
    return g;
}

} // namespace

const MPolyZ& WittPolynomialCache::get(const Int& p, Kind kind, unsigned i) {
    std::lock_guard<std::mutex> lock(mu_);
    auto& vec = cache_[{p, static_cast<int>(kind)}];
    while (vec.size() <= i) {
        unsigned k = static_cast<unsigned>(vec.size());
        MPolyZ target;
        switch (kind) {
            case Kind::Sum: target = ghostPoly(p, k, false) + ghostPoly(p, k, true); break;
            case Kind::Prod: target = ghostPoly(p, k, false) * ghostPoly(p, k, true); break;
            case Kind::Neg: target = MPolyZ::zero() - ghostPoly(p, k, false); break;
            case Kind::Frob: target = ghostPoly(p, k + 1, false); break;
        }
        // T_k = (target - sum_{j<k} p^j T_j^{p^(k-j)}) / p^k
        MPolyZ acc = target;
        for (unsigned j = 0; j < k; ++j) {
            unsigned long e = mpz_get_ui(pow_int(p, k - j).get_mpz_t());
            acc = acc - vec[j].pow(static_cast<unsigned>(e)).scaled(pow_int(p, j));
        }
        vec.push_back(acc.divExact(pow_int(p, k)));
    }
    return vec[i];
}

SemistablePoly RboxCoeffRing::pow(const Elem& a, unsigned e) const {
    if (e == 0) return one();
    SemistablePoly r = one();
    SemistablePoly base = a;
    while (e > 0) {
        if (e & 1u) r = r * base;
        e >>= 1u;
        if (e > 0) base = base * base;
    }
    return r;
}

SemistablePoly RboxCoeffRing::divExact(const Elem& a, const Int& c) const {
    if (modulus != 0) throw Error("divExact needs Z coefficients");
    SemistablePoly r = zero();
    for (const auto& [e, c0] : a.terms()) {
        if (c0 % c != 0) throw Error("inexact coefficient division in unghost");
        r = r + SemistablePoly::monomial(shape, modulus, e, c0 / c);
    }
    return r;
}

Int teich_rep(const Int& a, const Int& p, unsigned m) {
    Int mod = pow_int(p, m);
    Int e = pow_int(p, m >= 1 ? m - 1 : 0);
    Int r;
    mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), mod.get_mpz_t());
    return r;
}

Int wfp_to_zpm(const std::vector<Int>& coords, const Int& p) {
    const unsigned m = static_cast<unsigned>(coords.size());
    Int mod = pow_int(p, m);
    Int acc = 0;
    // stabilized ghost: sum p^j a_j^{p^(m-1-j)} mod p^m
    for (unsigned j = 0; j < m; ++j) {
        Int e = pow_int(p, m - 1 - j);
        Int t;
        mpz_powm(t.get_mpz_t(), coords[j].get_mpz_t(), e.get_mpz_t(), mod.get_mpz_t());
        acc = (acc + pow_int(p, j) * t) % mod;
    }
    return acc;
}

std::vector<Int> zpm_to_wfp(const Int& c, const Int& p, unsigned m) {
    std::vector<Int> coords;
    Int cur = c % pow_int(p, m);
    if (cur < 0) cur += pow_int(p, m);
    for (unsigned j = 0; j < m; ++j) {
        unsigned rem = m - j;
        Int mod = pow_int(p, rem);
        cur %= mod;
        Int a = cur % p;
        coords.push_back(a);
        Int t = (cur - teich_rep(a, p, rem)) % mod;
        if (t < 0) t += mod;
        if (t % p != 0) throw Error("zpm_to_wfp digit extraction failed");
        cur = t / p;
    }
    return coords;
}

std::vector<WittExpansionTerm> canonical_expansion(const RboxCoeffRing& R, const Int& p,
                                                   const WittCoords<RboxCoeffRing>& x) {
    if (R.modulus != p) throw Error("canonical_expansion needs F_p coefficients");
    const unsigned n = static_cast<unsigned>(x.size());
    std::map<std::pair<unsigned, ExponentVector>, Int> acc; // (mu, e) -> eta
    WittCoords<RboxCoeffRing> residual = x;

    for (unsigned m = 0; m < n; ++m) {
        // residual = V^m(y); peel the Teichmuller part of y
        const SemistablePoly& c0 = residual[m];
        if (!c0.isZero()) {
            WittCoords<RboxCoeffRing> sigma = witt_zero(R, n);
            for (const auto& [e, a] : c0.terms()) {
                // rho = largest power of p (up to m) dividing the exponent vector
                unsigned rho = m;
                for (long v : e) {
                    if (v == 0) continue;
                    unsigned pv = 0;
                    Int q = abs(Int(v));
                    while (q % p == 0 && pv < rho) { q /= p; ++pv; }
                    rho = std::min(rho, pv);
                }
                unsigned mu = m - rho;
                ExponentVector prim(e.size());
                Int pr = pow_int(p, rho);
                for (std::size_t i = 0; i < e.size(); ++i)
                    prim[i] = static_cast<long>(mpz_get_si(Int(Int(e[i]) / pr).get_mpz_t()));
                Int modEta = pow_int(p, n - mu);
                Int etaContrib = (pow_int(p, rho) * teich_rep(a, p, n - mu)) % modEta;
                auto key = std::make_pair(mu, prim);
                auto it = acc.find(key);
                if (it == acc.end()) acc.emplace(key, etaContrib);
                else it->second = (it->second + etaContrib) % modEta;

                // subtract V^m([a][t]^e)
                WittCoords<RboxCoeffRing> term(n, R.zero());
                term[m] = SemistablePoly::monomial(R.shape, R.modulus, e, a);
                sigma = witt_add(R, p, sigma, term);
            }
            residual = witt_sub(R, p, residual, sigma);
        }
        if (!residual[m].isZero()) throw Error("canonical_expansion: peeling failed");
    }
    for (const auto& c : residual)
        if (!c.isZero()) throw Error("canonical_expansion: nonzero residual");

    std::vector<WittExpansionTerm> out;
    for (auto& [key, eta] : acc) {
        Int e = eta % pow_int(p, n - key.first);
        if (e < 0) e += pow_int(p, n - key.first);
        if (e == 0) continue;
        out.push_back({key.first, e, key.second});
    }
    return out;
}

WittCoords<RboxCoeffRing> reassemble_expansion(const RboxCoeffRing& R, const Int& p, unsigned n,
                                               const std::vector<WittExpansionTerm>& terms) {
    WittCoords<RboxCoeffRing> acc = witt_zero(R, n);
    for (const auto& t : terms) {
        if (t.mu >= n) continue;
        unsigned m = n - t.mu;
        // eta as an element of W_m(F_p), then eta * [t]^e inside W_m
        auto digits = zpm_to_wfp(t.eta, p, m);
        WittCoords<RboxCoeffRing> etaW(m, R.zero());
        for (unsigned j = 0; j < m; ++j) etaW[j] = R.fromInt(digits[j]);
        WittCoords<RboxCoeffRing> mono(m, R.zero());
        mono[0] = SemistablePoly::monomial(R.shape, R.modulus, t.e);
        WittCoords<RboxCoeffRing> prod = witt_mul(R, p, etaW, mono);
        // V^mu into W_n
        WittCoords<RboxCoeffRing> lifted(n, R.zero());
        for (unsigned j = 0; j < m; ++j) lifted[j + t.mu] = prod[j];
        acc = witt_add(R, p, acc, lifted);
    }
    return acc;
}

} // namespace drw
