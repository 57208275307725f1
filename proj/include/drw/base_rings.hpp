#pragma once
#include <vector>

#include "drw/exact_linalg.hpp"

namespace drw {

/// Z/p^m with p prime (checked).
struct PrimePowerRing {
    Int p;
    unsigned m;

    PrimePowerRing(Int prime, unsigned exponent);
    Int modulus() const { return pow_int(p, m); }
    Int reduce(const Int& x) const;
};

/// Dense polynomial in Z[q], coefficient of q^i at index i.
using PolyZ = std::vector<Int>;

PolyZ poly_mul(const PolyZ& a, const PolyZ& b);
PolyZ poly_add(const PolyZ& a, const PolyZ& b);
/// Remainder of a modulo a monic polynomial m.
PolyZ poly_mod_monic(PolyZ a, const PolyZ& m);
bool poly_eq(const PolyZ& a, const PolyZ& b);

/// The q-analog modulus [p^n]_q = 1 + q + ... + q^{p^n - 1} in Z[q].
PolyZ q_analog_modulus(const Int& p, unsigned n);
/// Cyclotomic polynomial Phi_{p^j}(q), j >= 1.
PolyZ cyclotomic_ppow(const Int& p, unsigned j);

/// Element of Lambda_n = Z[q]/([p^n]_q): integer coefficient vector of
/// length p^n - 1 with the reduction already applied. Coefficients are
/// kept over Z (not mod p) so that lattice computations stay exact.
class CycloTruncElem {
public:
    CycloTruncElem() : p_(0), n_(0) {}
    CycloTruncElem(Int p, unsigned n); // zero element
    static CycloTruncElem fromPoly(const Int& p, unsigned n, const PolyZ& poly);
    static CycloTruncElem constant(const Int& p, unsigned n, const Int& c);
    static CycloTruncElem qPower(const Int& p, unsigned n, long e); // q^e, e may be negative

    const Int& p() const { return p_; }
    unsigned level() const { return n_; }
    std::size_t dim() const { return coeffs_.size(); } // p^n - 1
    const std::vector<Int>& coeffs() const { return coeffs_; }

    bool isZero() const;
    bool operator==(const CycloTruncElem&) const = default;

    CycloTruncElem operator+(const CycloTruncElem& o) const;
    CycloTruncElem operator-(const CycloTruncElem& o) const;
    CycloTruncElem operator*(const CycloTruncElem& o) const;
    CycloTruncElem scaled(const Int& c) const;

    /// Multiplication-by-*this as an integer matrix on the Z-lattice
    /// basis 1, q, ..., q^{p^n - 2}.
    IntMatrix multMatrix() const;

    std::string str() const;

private:
    Int p_;
    unsigned n_;
    std::vector<Int> coeffs_;
    void checkCompat(const CycloTruncElem& o) const;
};

/// [a]_q in Lambda_n; for a < 0 via [a]_q = -q^a [-a]_q (q is invertible).
CycloTruncElem q_integer(const Int& a, const Int& p, unsigned n);

/// xi~_n = [p^n]_q computed inside Lambda_N; requires N > n.
CycloTruncElem xi_tilde(const Int& p, unsigned n, unsigned N);

/// Ring map Lambda_n -> Z/p^n, q |-> 1.
Int specialize_q_to_1(const CycloTruncElem& x);

/// Ring map Lambda_n -> Lambda_{n-1} (n >= 2): the canonical projection
/// (coefficientwise reduction mod [p^{n-1}]_q). Under the fixed compatible
/// system of p-power roots of unity this is the Frobenius action q -> q^p
/// with the level-(n-1) generator identified with q^p.
CycloTruncElem frobenius_phi(const CycloTruncElem& x);

} // namespace drw
