#pragma once
#include <map>
#include <mutex>
#include <vector>

#include "drw/exact_linalg.hpp"
#include "drw/semistable.hpp"

namespace drw {

/// Sparse multivariate polynomial over Z. Variable layout is interleaved:
/// x_j lives at index 2j, y_j at 2j+1, so depth growth never re-indexes.
/// Monomial keys are exponent vectors with trailing zeros trimmed.
struct MPolyZ {
    std::map<std::vector<unsigned>, Int> terms;

    static MPolyZ zero() { return {}; }
    static MPolyZ constant(const Int& c);
    static MPolyZ var(unsigned idx, unsigned exp = 1);

    MPolyZ operator+(const MPolyZ& o) const;
    MPolyZ operator-(const MPolyZ& o) const;
    MPolyZ operator*(const MPolyZ& o) const;
    MPolyZ pow(unsigned e) const;
    MPolyZ scaled(const Int& c) const;
    MPolyZ divExact(const Int& c) const;
    std::size_t size() const { return terms.size(); }
};

/// Memoized universal Witt polynomials over Z, solved from the ghost
/// equations. Write-once-then-read per (p, kind, depth); thread safe.
class WittPolynomialCache {
public:
    enum class Kind { Sum, Prod, Neg, Frob };

    static WittPolynomialCache& instance();
    /// Polynomial for coordinate i of the requested operation at prime p.
    const MPolyZ& get(const Int& p, Kind kind, unsigned i);

private:
    std::mutex mu_;
    std::map<std::pair<Int, int>, std::vector<MPolyZ>> cache_;
};

// Coefficient ring objects for Witt vectors. Each provides the closed set
// of element operations the universal polynomials are evaluated over.

struct ZmodCoeffRing {
    Int modulus; // p^m
    using Elem = Int;
    Elem zero() const { return Int(0); }
    Elem one() const { return Int(1); }
    Elem fromInt(const Int& c) const { Int r = c % modulus; if (r < 0) r += modulus; return r; }
    Elem add(const Elem& a, const Elem& b) const { return fromInt(a + b); }
    Elem mul(const Elem& a, const Elem& b) const { return fromInt(a * b); }
    Elem neg(const Elem& a) const { return fromInt(-a); }
    bool isZero(const Elem& a) const { return fromInt(a) == 0; }
    Elem pow(const Elem& a, unsigned e) const {
        Int r, ee(e);
        mpz_powm(r.get_mpz_t(), a.get_mpz_t(), ee.get_mpz_t(), modulus.get_mpz_t());
        return r;
    }
    Elem divExact(const Elem&, const Int&) const { throw Error("divExact over Z/p^m"); }
};

struct ZCoeffRing {
    using Elem = Int;
    Elem zero() const { return Int(0); }
    Elem one() const { return Int(1); }
    Elem fromInt(const Int& c) const { return c; }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem neg(const Elem& a) const { return -a; }
    bool isZero(const Elem& a) const { return a == 0; }
    Elem pow(const Elem& a, unsigned e) const { return pow_int(a, e); }
    Elem divExact(const Elem& a, const Int& c) const {
        if (a % c != 0) throw Error("inexact integer division in unghost");
        return a / c;
    }
};

/// Semistable coordinate ring with coefficients Z (modulus 0) or Z/p^m,
/// special fiber (pi = 0).
struct RboxCoeffRing {
    FrameShape shape;
    Int modulus; // 0 = Z coefficients
    using Elem = SemistablePoly;
    Elem zero() const { return SemistablePoly::zero(shape, modulus); }
    Elem one() const { return SemistablePoly::constant(shape, modulus, Int(1)); }
    Elem fromInt(const Int& c) const { return SemistablePoly::constant(shape, modulus, c); }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem neg(const Elem& a) const { return a.negated(); }
    bool isZero(const Elem& a) const { return a.isZero(); }
    Elem pow(const Elem& a, unsigned e) const;
    Elem divExact(const Elem& a, const Int& c) const;
};

template <class Ring>
using WittCoords = std::vector<typename Ring::Elem>;

// --- generic Witt operations (length n == coords.size()) ---

template <class Ring>
typename Ring::Elem eval_mpoly(const Ring& R, const MPolyZ& poly,
                               const std::vector<typename Ring::Elem>& vals) {
    // vals follow the interleaved variable layout
    std::vector<std::map<unsigned, typename Ring::Elem>> powers(vals.size());
    auto varPow = [&](unsigned idx, unsigned e) -> const typename Ring::Elem& {
        auto& memo = powers.at(idx);
        auto it = memo.find(e);
        if (it == memo.end()) it = memo.emplace(e, R.pow(vals[idx], e)).first;
        return it->second;
    };
    typename Ring::Elem acc = R.zero();
    for (const auto& [mono, coeff] : poly.terms) {
        typename Ring::Elem t = R.fromInt(coeff);
        for (unsigned idx = 0; idx < mono.size(); ++idx)
            if (mono[idx] > 0) t = R.mul(t, varPow(idx, mono[idx]));
        acc = R.add(acc, t);
    }
    return acc;
}

template <class Ring>
WittCoords<Ring> witt_zero(const Ring& R, unsigned n) {
    return WittCoords<Ring>(n, R.zero());
}

template <class Ring>
WittCoords<Ring> teichmuller(const Ring& R, const typename Ring::Elem& a, unsigned n) {
    WittCoords<Ring> w(n, R.zero());
    if (n > 0) w[0] = a;
    return w;
}

namespace detail {
template <class Ring>
std::vector<typename Ring::Elem> interleave(const WittCoords<Ring>& x, const WittCoords<Ring>& y,
                                            const Ring& R) {
    std::vector<typename Ring::Elem> v(2 * std::max(x.size(), y.size()), R.zero());
    for (std::size_t j = 0; j < x.size(); ++j) v[2 * j] = x[j];
    for (std::size_t j = 0; j < y.size(); ++j) v[2 * j + 1] = y[j];
    return v;
}
} // namespace detail

template <class Ring>
WittCoords<Ring> witt_add(const Ring& R, const Int& p, const WittCoords<Ring>& x,
                          const WittCoords<Ring>& y) {
    if (x.size() != y.size()) throw LengthMismatch("witt_add length");
    auto vals = detail::interleave(x, y, R);
    WittCoords<Ring> out;
    auto& cache = WittPolynomialCache::instance();
    for (unsigned i = 0; i < x.size(); ++i)
        out.push_back(eval_mpoly(R, cache.get(p, WittPolynomialCache::Kind::Sum, i), vals));
    return out;
}

template <class Ring>
WittCoords<Ring> witt_mul(const Ring& R, const Int& p, const WittCoords<Ring>& x,
                          const WittCoords<Ring>& y) {
    if (x.size() != y.size()) throw LengthMismatch("witt_mul length");
    auto vals = detail::interleave(x, y, R);
    WittCoords<Ring> out;
    auto& cache = WittPolynomialCache::instance();
    for (unsigned i = 0; i < x.size(); ++i)
        out.push_back(eval_mpoly(R, cache.get(p, WittPolynomialCache::Kind::Prod, i), vals));
    return out;
}

template <class Ring>
WittCoords<Ring> witt_neg(const Ring& R, const Int& p, const WittCoords<Ring>& x) {
    std::vector<typename Ring::Elem> vals(2 * x.size(), R.zero());
    for (std::size_t j = 0; j < x.size(); ++j) vals[2 * j] = x[j];
    WittCoords<Ring> out;
    auto& cache = WittPolynomialCache::instance();
    for (unsigned i = 0; i < x.size(); ++i)
        out.push_back(eval_mpoly(R, cache.get(p, WittPolynomialCache::Kind::Neg, i), vals));
    return out;
}

template <class Ring>
WittCoords<Ring> witt_sub(const Ring& R, const Int& p, const WittCoords<Ring>& x,
                          const WittCoords<Ring>& y) {
    return witt_add(R, p, x, witt_neg(R, p, y));
}

/// Scalar multiple by an integer via double-and-add on witt_add.
template <class Ring>
WittCoords<Ring> witt_int_mul(const Ring& R, const Int& p, Int c, const WittCoords<Ring>& x) {
    WittCoords<Ring> acc = witt_zero(R, static_cast<unsigned>(x.size()));
    WittCoords<Ring> base = x;
    bool negate = c < 0;
    if (negate) c = -c;
    while (c > 0) {
        if (mpz_odd_p(c.get_mpz_t())) acc = witt_add(R, p, acc, base);
        c >>= 1;
        if (c > 0) base = witt_add(R, p, base, base);
    }
    return negate ? witt_neg(R, p, acc) : acc;
}

template <class Ring>
WittCoords<Ring> frobenius_F(const Ring& R, const Int& p, const WittCoords<Ring>& x) {
    if (x.size() < 2) throw LengthTooShort("frobenius_F needs length >= 2");
    std::vector<typename Ring::Elem> vals(2 * x.size(), R.zero());
    for (std::size_t j = 0; j < x.size(); ++j) vals[2 * j] = x[j];
    WittCoords<Ring> out;
    auto& cache = WittPolynomialCache::instance();
    for (unsigned i = 0; i + 1 < x.size(); ++i)
        out.push_back(eval_mpoly(R, cache.get(p, WittPolynomialCache::Kind::Frob, i), vals));
    return out;
}

template <class Ring>
WittCoords<Ring> verschiebung_V(const Ring& R, const WittCoords<Ring>& x) {
    WittCoords<Ring> out(x.size() + 1, R.zero());
    for (std::size_t j = 0; j < x.size(); ++j) out[j + 1] = x[j];
    return out;
}

template <class Elem>
std::vector<Elem> restriction_R(const std::vector<Elem>& x) {
    if (x.empty()) throw LengthTooShort("restriction_R on W_0");
    return std::vector<Elem>(x.begin(), x.end() - 1);
}

/// Ghost components w_i = sum_{j<=i} p^j a_j^{p^(i-j)}.
template <class Ring>
std::vector<typename Ring::Elem> ghost(const Ring& R, const Int& p, const WittCoords<Ring>& x) {
    std::vector<typename Ring::Elem> g;
    for (unsigned i = 0; i < x.size(); ++i) {
        typename Ring::Elem acc = R.zero();
        for (unsigned j = 0; j <= i; ++j) {
            unsigned long e = mpz_get_ui(pow_int(p, i - j).get_mpz_t());
            acc = R.add(acc, R.mul(R.fromInt(pow_int(p, j)), R.pow(x[j], static_cast<unsigned>(e))));
        }
        g.push_back(acc);
    }
    return g;
}

/// Inverse of ghost for rings where exact division by p^i is available
/// (used by the ghost oracle over Z-lifts).
template <class Ring>
WittCoords<Ring> unghost(const Ring& R, const Int& p, const std::vector<typename Ring::Elem>& g) {
    WittCoords<Ring> c;
    for (unsigned i = 0; i < g.size(); ++i) {
        typename Ring::Elem acc = g[i];
        for (unsigned j = 0; j < i; ++j) {
            unsigned long e = mpz_get_ui(pow_int(p, i - j).get_mpz_t());
            acc = R.add(acc, R.neg(R.mul(R.fromInt(pow_int(p, j)), R.pow(c[j], static_cast<unsigned>(e)))));
        }
        c.push_back(R.divExact(acc, pow_int(p, i)));
    }
    return c;
}

// --- W_m(F_p) <-> Z/p^m ---

/// Canonical ring isomorphism W_m(F_p) -> Z/p^m on coordinate vectors
/// (entries taken mod p), via the stabilized ghost component.
Int wfp_to_zpm(const std::vector<Int>& coords, const Int& p);

/// Inverse: digits of c in Teichmuller expansion, as F_p coordinates.
std::vector<Int> zpm_to_wfp(const Int& c, const Int& p, unsigned m);

/// Teichmuller representative of a mod p inside Z/p^m.
Int teich_rep(const Int& a, const Int& p, unsigned m);

// --- canonical expansion over W_n(R_box with F_p coefficients) ---

/// One summand V^mu(eta [t]^{p^mu k}): eta in Z/p^{n-mu}, and the weight k
/// is stored via its integral primitive form e = p^mu k.
struct WittExpansionTerm {
    unsigned mu;
    Int eta;
    ExponentVector e;

    bool operator==(const WittExpansionTerm&) const = default;
};

/// Unique convergent-sum expansion of x in W_n(R_box/F_p); level n = x.size().
std::vector<WittExpansionTerm> canonical_expansion(const RboxCoeffRing& R, const Int& p,
                                                   const WittCoords<RboxCoeffRing>& x);

/// Rebuild the Witt vector from its expansion (exact inverse).
WittCoords<RboxCoeffRing> reassemble_expansion(const RboxCoeffRing& R, const Int& p, unsigned n,
                                               const std::vector<WittExpansionTerm>& terms);

} // namespace drw
