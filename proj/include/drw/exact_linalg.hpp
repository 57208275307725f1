#pragma once
#include <gmpxx.h>
#include <vector>
#include <optional>
#include <string>

#include "drw/errors.hpp"

namespace drw {

using Int = mpz_class;

/// Dense matrix with arbitrary-precision integer entries.
/// Differentials act on column vectors: an r x c matrix maps Z^c -> Z^r.
class IntMatrix {
public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), e_(rows * cols, Int(0)) {}
    static IntMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Int& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    bool operator==(const IntMatrix&) const = default;
    bool isZero() const;

    IntMatrix transpose() const;
    IntMatrix operator*(const IntMatrix& o) const;
    IntMatrix operator+(const IntMatrix& o) const;
    IntMatrix operator-(const IntMatrix& o) const;
    IntMatrix scaled(const Int& c) const;
    /// Horizontal concatenation [*this | o].
    IntMatrix hcat(const IntMatrix& o) const;

    std::vector<Int> apply(const std::vector<Int>& v) const;
    std::string str() const;

private:
    std::size_t rows_, cols_;
    std::vector<Int> e_;
};

/// Result of a Smith normal form computation: u * d * v == input with
/// u, v unimodular and d diagonal with d(i,i) | d(i+1,i+1), d(i,i) >= 0.
/// uinv, vinv are the tracked inverses.
struct SmithResult {
    IntMatrix u, d, v;
    IntMatrix uinv, vinv;
    std::size_t rank = 0; // number of nonzero diagonal entries
};

SmithResult smith_normal_form(const IntMatrix& m);

/// Determinant via SNF (product of diagonal, sign from transforms is
/// discarded; used only for unimodularity checks in tests).
Int snf_abs_det(const IntMatrix& m);

/// Basis of the integer kernel {x : m x = 0}, as matrix columns.
IntMatrix int_kernel(const IntMatrix& m);

/// Solve m x = b exactly over Z for each column of b. Throws Error if no
/// integral solution exists.
IntMatrix int_solve(const IntMatrix& m, const IntMatrix& b);
bool int_solvable(const IntMatrix& m, const IntMatrix& b);

/// Matrix over Z/p^m with entries stored as reduced residues in [0, p^m).
class ModMatrix {
public:
    ModMatrix() : rows_(0), cols_(0), mod_(0) {}
    ModMatrix(std::size_t rows, std::size_t cols, const Int& modulus);
    static ModMatrix fromInt(const IntMatrix& m, const Int& modulus);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const Int& modulus() const { return mod_; }
    Int& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }
    void reduce();

    bool operator==(const ModMatrix&) const = default;
    IntMatrix lift() const;
    ModMatrix operator*(const ModMatrix& o) const;
    std::string str() const;

private:
    std::size_t rows_, cols_;
    Int mod_;
    std::vector<Int> e_;
};

/// Howell canonical form of the row span of m over Z/p^m. The result has
/// no zero rows, strictly increasing pivot columns, pivot entries p^e,
/// entries above a pivot reduced modulo that pivot, and is span-closed:
/// two matrices have the same row span iff their Howell forms are equal.
ModMatrix howell_form(const ModMatrix& m);

/// True iff v lies in the row span of gens (same modulus required).
bool submodule_membership(const ModMatrix& gens, const std::vector<Int>& v);

/// Reduce v modulo the row span of a Howell form h; the result is the
/// canonical coset representative (zero iff v is in the span).
std::vector<Int> howell_reduce(const ModMatrix& h, std::vector<Int> v);

/// Solve x * gens = v over Z/p^m (row-vector convention), if possible.
std::optional<std::vector<Int>> howell_solve(const ModMatrix& gens, const std::vector<Int>& v);

/// Generators (rows) of {x : m x = 0 over Z/p^m}.
ModMatrix mod_kernel(const ModMatrix& m);

/// Isomorphism class of a finite module over Z_p: invariant factors
/// p^{e_1} >= ... >= p^{e_s} stored as descending exponents e_i >= 1.
/// For Z-complexes a free rank is carried alongside.
struct FiniteModule {
    std::vector<unsigned> exps; // descending
    unsigned freeRank = 0;      // nonzero only for Z-coefficient complexes

    bool operator==(const FiniteModule&) const = default;
    bool isZero() const { return exps.empty() && freeRank == 0; }
    std::string str(const Int& p) const;
};

/// Cohomology of a bounded complex of free Z/p^m-modules given by
/// differentials d[i] : R^{ranks[i]} -> R^{ranks[i+1]} (column convention).
/// Returns H^0..H^{last}. Throws CompositionNonzero if d d != 0.
std::vector<FiniteModule> complex_cohomology_mod(const std::vector<std::size_t>& ranks,
                                                 const std::vector<ModMatrix>& diffs,
                                                 const Int& p);

/// Same over Z: torsion invariant factors (p-parts reported via exps for
/// the given p; non-p torsion reported as is in `raw`) plus free rank.
struct IntCohomology {
    FiniteModule mod;          // p-part exponents + free rank
    std::vector<Int> torsion;  // all nontrivial invariant factors, for display
};
std::vector<IntCohomology> complex_cohomology_int(const std::vector<std::size_t>& ranks,
                                                  const std::vector<IntMatrix>& diffs,
                                                  const Int& p);

/// Invariant factors of the quotient L_amb / L_sub of two integer lattices
/// in Z^n given by generator columns (L_sub must be contained in L_amb).
/// Returns (p-part FiniteModule, all invariant factors, free rank).
IntCohomology lattice_quotient(const IntMatrix& amb, const IntMatrix& sub, const Int& p);

unsigned padic_val(const Int& x, const Int& p); // v_p(x); x != 0
Int pow_int(const Int& base, unsigned e);

} // namespace drw
