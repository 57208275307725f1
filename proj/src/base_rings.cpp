#include "drw/base_rings.hpp"

#include <algorithm>
#include <sstream>

namespace drw {

PrimePowerRing::PrimePowerRing(Int prime, unsigned exponent) : p(std::move(prime)), m(exponent) {
    if (m < 1) throw Error("PrimePowerRing exponent must be >= 1");
    if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 30) == 0)
        throw Error("PrimePowerRing: " + p.get_str() + " is not prime");
}

Int PrimePowerRing::reduce(const Int& x) const {
    Int q = modulus();
    Int r = x % q;
    if (r < 0) r += q;
    return r;
}

static void trim(PolyZ& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

PolyZ poly_mul(const PolyZ& a, const PolyZ& b) {
    if (a.empty() || b.empty()) return {};
    PolyZ r(a.size() + b.size() - 1, Int(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    trim(r);
    return r;
}

PolyZ poly_add(const PolyZ& a, const PolyZ& b) {
    PolyZ r(std::max(a.size(), b.size()), Int(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    trim(r);
    return r;
}

PolyZ poly_mod_monic(PolyZ a, const PolyZ& m) {
    if (m.empty() || m.back() != 1) throw Error("poly_mod_monic: modulus must be monic");
    trim(a);
    const std::size_t dm = m.size() - 1;
    while (a.size() > dm) {
        Int c = a.back();
        std::size_t sh = a.size() - 1 - dm;
        for (std::size_t i = 0; i < dm; ++i) a[sh + i] -= c * m[i];
        a.pop_back();
        trim(a);
    }
    return a;
}

bool poly_eq(const PolyZ& a, const PolyZ& b) {
    PolyZ x = a, y = b;
    trim(x);
    trim(y);
    return x == y;
}

PolyZ q_analog_modulus(const Int& p, unsigned n) {
    Int deg = pow_int(p, n);
    PolyZ m(mpz_get_ui(deg.get_mpz_t()), Int(1));
    return m; // 1 + q + ... + q^{p^n - 1}, monic of degree p^n - 1
}

PolyZ cyclotomic_ppow(const Int& p, unsigned j) {
    // Phi_{p^j}(q) = sum_{i < p} q^{i p^{j-1}}
    Int step = pow_int(p, j - 1);
    unsigned long st = mpz_get_ui(step.get_mpz_t());
    unsigned long pp = mpz_get_ui(p.get_mpz_t());
    PolyZ r(st * (pp - 1) + 1, Int(0));
    for (unsigned long i = 0; i < pp; ++i) r[i * st] = 1;
    return r;
}

CycloTruncElem::CycloTruncElem(Int p, unsigned n) : p_(std::move(p)), n_(n) {
    if (n_ < 1) throw LevelTooSmall("Lambda level must be >= 1");
    Int d = pow_int(p_, n_) - 1;
    coeffs_.assign(mpz_get_ui(d.get_mpz_t()), Int(0));
}

CycloTruncElem CycloTruncElem::fromPoly(const Int& p, unsigned n, const PolyZ& poly) {
    CycloTruncElem e(p, n);
    PolyZ r = poly_mod_monic(poly, q_analog_modulus(p, n));
    for (std::size_t i = 0; i < r.size(); ++i) e.coeffs_[i] = r[i];
    return e;
}

CycloTruncElem CycloTruncElem::constant(const Int& p, unsigned n, const Int& c) {
    return fromPoly(p, n, PolyZ{c});
}

CycloTruncElem CycloTruncElem::qPower(const Int& p, unsigned n, long e) {
    Int order = pow_int(p, n); // q^{p^n} = 1 in Lambda_n
    Int ee = Int(e) % order;
    if (ee < 0) ee += order;
    PolyZ mono(mpz_get_ui(ee.get_mpz_t()) + 1, Int(0));
    mono.back() = 1;
    return fromPoly(p, n, mono);
}

bool CycloTruncElem::isZero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Int& x) { return x == 0; });
}

void CycloTruncElem::checkCompat(const CycloTruncElem& o) const {
    if (p_ != o.p_ || n_ != o.n_) throw LevelMismatch("Lambda level/prime mismatch");
}

CycloTruncElem CycloTruncElem::operator+(const CycloTruncElem& o) const {
    checkCompat(o);
    CycloTruncElem r = *this;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] += o.coeffs_[i];
    return r;
}

CycloTruncElem CycloTruncElem::operator-(const CycloTruncElem& o) const {
    checkCompat(o);
    CycloTruncElem r = *this;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] -= o.coeffs_[i];
    return r;
}

CycloTruncElem CycloTruncElem::operator*(const CycloTruncElem& o) const {
    checkCompat(o);
    return fromPoly(p_, n_, poly_mul(coeffs_, o.coeffs_));
}

CycloTruncElem CycloTruncElem::scaled(const Int& c) const {
    CycloTruncElem r = *this;
    for (auto& x : r.coeffs_) x *= c;
    return r;
}

IntMatrix CycloTruncElem::multMatrix() const {
    std::size_t d = coeffs_.size();
    IntMatrix m(d, d);
    CycloTruncElem cur = *this;
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t i = 0; i < d; ++i) m(i, j) = cur.coeffs_[i];
        cur = cur * qPower(p_, n_, 1);
    }
    return m;
}

std::string CycloTruncElem::str() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        if (!first) os << " + ";
        first = false;
        os << coeffs_[i].get_str();
        if (i >= 1) os << "*q";
        if (i >= 2) os << "^" << i;
    }
    if (first) os << "0";
    return os.str();
}

CycloTruncElem q_integer(const Int& a, const Int& p, unsigned n) {
    // [a + p^n]_q = [a]_q + q^a [p^n]_q = [a]_q in Lambda_n, so reduce a
    Int order = pow_int(p, n);
    Int aa = a % order;
    if (aa < 0) aa += order;
    PolyZ s(mpz_get_ui(aa.get_mpz_t()), Int(1)); // 1 + q + ... + q^{aa-1}
    return CycloTruncElem::fromPoly(p, n, s);
}

CycloTruncElem xi_tilde(const Int& p, unsigned n, unsigned N) {
    if (N <= n) throw LevelTooSmall("xi_tilde requires ambient level N > n");
    Int pn = pow_int(p, n);
    return q_integer(pn, p, N);
}

Int specialize_q_to_1(const CycloTruncElem& x) {
    Int q = pow_int(x.p(), x.level());
    Int s = 0;
    for (const auto& c : x.coeffs()) s += c;
    s %= q;
    if (s < 0) s += q;
    return s;
}

CycloTruncElem frobenius_phi(const CycloTruncElem& x) {
    if (x.level() < 2) throw LevelTooSmall("frobenius_phi needs level >= 2");
    return CycloTruncElem::fromPoly(x.p(), x.level() - 1, x.coeffs());
}

} // namespace drw
