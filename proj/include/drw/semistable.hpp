#pragma once
#include <map>
#include <vector>

#include "drw/exact_linalg.hpp"

namespace drw {

/// Shape of the semistable frame: coordinates t_0..t_d with the relation
/// t_0...t_r = pi. Coordinates t_{r+1}..t_d are inverted. pi lives in the
/// coefficient ring; pi = 0 is the special fiber.
struct FrameShape {
    unsigned d = 1;
    unsigned r = 1;

    FrameShape() = default;
    FrameShape(unsigned d_, unsigned r_) : d(d_), r(r_) {
        if (r > d) throw ShapeMismatch("FrameShape needs 0 <= r <= d");
    }
    bool operator==(const FrameShape&) const = default;
    auto operator<=>(const FrameShape&) const = default;
};

using ExponentVector = std::vector<long>; // indexed by [0, d]

/// Element of R_S = S[t_0..t_r, t_{r+1}^{+-1}..t_d^{+-1}]/(t_0...t_r - pi)
/// in monomial normal form: every stored key has min(e_0..e_r) = 0 and no
/// zero coefficients. Coefficients are S = Z (modulus 0) or Z/modulus.
class SemistablePoly {
public:
    SemistablePoly() = default;
    SemistablePoly(FrameShape shape, Int modulus, Int pi = Int(0));

    static SemistablePoly zero(FrameShape shape, Int modulus, Int pi = Int(0));
    static SemistablePoly constant(FrameShape shape, Int modulus, const Int& c, Int pi = Int(0));
    static SemistablePoly monomial(FrameShape shape, Int modulus, const ExponentVector& e,
                                   const Int& coeff = Int(1), Int pi = Int(0));

    const FrameShape& shape() const { return shape_; }
    const Int& modulus() const { return mod_; } // 0 means Z
    const Int& pi() const { return pi_; }
    const std::map<ExponentVector, Int>& terms() const { return terms_; }
    bool isZero() const { return terms_.empty(); }

    bool operator==(const SemistablePoly&) const = default;
    SemistablePoly operator+(const SemistablePoly& o) const;
    SemistablePoly operator-(const SemistablePoly& o) const;
    SemistablePoly operator*(const SemistablePoly& o) const;
    SemistablePoly scaled(const Int& c) const;
    SemistablePoly negated() const;

    /// Frobenius power on exponents and coefficients: t -> t^k, c -> c^k.
    SemistablePoly powAllExponents(unsigned k) const;

    /// Coefficient of a monomial (normalizing the requested exponent first).
    Int coeff(const ExponentVector& e) const;

    /// Change coefficient ring: reduce mod newModulus (or lift to Z with
    /// newModulus = 0, taking canonical representatives).
    SemistablePoly withModulus(const Int& newModulus) const;

    std::string str() const;

private:
    FrameShape shape_;
    Int mod_ = 0;
    Int pi_ = 0;
    std::map<ExponentVector, Int> terms_;

    void addTerm(ExponentVector e, Int c);
    Int reduceCoeff(const Int& c) const;
    void checkCompat(const SemistablePoly& o) const;
};

/// Normal form of a single monomial: kills it when pi = 0 and the chart
/// exponent block is entirely positive, otherwise substitutes t_0...t_r -> pi.
SemistablePoly normalize_monomial(const ExponentVector& e, const FrameShape& shape,
                                  const Int& modulus, const Int& pi = Int(0),
                                  const Int& coeff = Int(1));

enum class MonomialVariant { Plus, Laurent };

/// All normal-form exponent vectors in the weight box: entries in [0, B]
/// on [0, r], and on (r, d] in [0, B] (Plus) or [-B, B] (Laurent).
/// pi = 0 normal form: min over [0, r] equals 0.
std::vector<ExponentVector> monomial_basis(const FrameShape& shape, unsigned B,
                                           MonomialVariant variant);

} // namespace drw
