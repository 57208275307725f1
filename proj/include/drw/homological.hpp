#pragma once
#include <vector>

#include "drw/base_rings.hpp"
#include "drw/exact_linalg.hpp"
#include "drw/report.hpp"

namespace drw {

enum class BaseRingTag { Z, Zmod };

/// Bounded cochain complex of finite free modules in degrees 0..N.
/// Differentials are stored as integer matrices; for Zmod they are read
/// modulo `modulus`. diffs[i] maps degree i to degree i+1.
struct FreeComplex {
    BaseRingTag ring = BaseRingTag::Z;
    Int modulus = 0; // used when ring == Zmod
    std::vector<std::size_t> ranks;
    std::vector<IntMatrix> diffs;

    std::size_t topDegree() const { return ranks.empty() ? 0 : ranks.size() - 1; }
    void validate() const; // shapes and d o d = 0 (mod modulus if any)
    FreeComplex withModulus(const Int& q) const; // same matrices, Zmod ring
};

/// Invariant factors of H^i for all degrees.
std::vector<IntCohomology> cohomology(const FreeComplex& k, const Int& p);

/// Koszul complex K(f_1..f_m) over Z or Z/q; degree-i rank is C(m, i).
FreeComplex koszul(BaseRingTag ring, const Int& modulus, const std::vector<Int>& entries);

/// Koszul complex over Lambda_n, kept with ring entries so it can be
/// expanded Z-linearly or specialized at q -> 1.
struct LambdaComplex {
    Int p;
    unsigned level = 1;
    std::vector<std::size_t> ranks;                          // Lambda-ranks
    std::vector<std::vector<std::vector<CycloTruncElem>>> diffs; // [i][row][col]

    /// Expansion over the Z-lattice basis 1, q, .., q^{p^n-2} per Lambda slot.
    FreeComplex toLattice() const;
    /// Block-diagonal action of a ring element on the lattice expansion.
    std::vector<IntMatrix> latticeAction(const CycloTruncElem& f) const;
    /// Base change q -> 1 to Z/p^n.
    FreeComplex specializeQ1() const;
};

LambdaComplex koszul_lambda(const Int& p, unsigned level, const std::vector<CycloTruncElem>& entries);

/// Decalage eta_f of an exact Z-complex, f acting by per-degree matrices
/// commuting with the differentials. Throws ZeroDivisor unless every
/// action matrix is injective.
FreeComplex decalage(const FreeComplex& k, const std::vector<IntMatrix>& fAction);
FreeComplex decalage_scalar(const FreeComplex& k, const Int& f);

/// Complex over Z/q together with a chosen lift over Z/q^2.
/// The canonical choice reuses the same integer matrices.
struct BocksteinData {
    FreeComplex complex; // ring Zmod, modulus q
    FreeComplex lift;    // ring Zmod, modulus q^2

    static BocksteinData canonical(const FreeComplex& zComplex, const Int& q);
    void validate() const; // LiftMismatch when reduction or d o d fails
};

/// Finitely presented graded module with degree-raising maps:
/// degree i is Z^{gens[i]} / colspan(rels[i]), maps[i] raises degree.
/// All modules are torsion (the relation lattices have full rank).
struct PresentedComplex {
    std::vector<std::size_t> gens;
    std::vector<IntMatrix> rels;
    std::vector<IntMatrix> maps;

    FiniteModule moduleAt(std::size_t i, const Int& p) const;
    FiniteModule mapImageAt(std::size_t i, const Int& p) const; // im(maps[i]) as a module
    std::vector<FiniteModule> cohomology(const Int& p) const;
};

/// The Bockstein complex (H*(K/q), beta) of a lifted complex.
PresentedComplex bockstein_complex(const BocksteinData& b, const Int& p);

/// Checks H*(eta_f K tensor Z/f) against the Bockstein complex of
/// H*(K tensor Z/f): termwise invariant factors, plus equality of the
/// cohomologies of the two Bockstein structures.
VerificationReport eta_mod_f_comparison(const FreeComplex& k, const Int& f, const Int& p);

/// Basis (columns) of the lattice spanned by the given generator columns.
IntMatrix lattice_basis(const IntMatrix& gens);

std::string invFactorsStr(const std::vector<FiniteModule>& hs, const Int& p);

} // namespace drw
