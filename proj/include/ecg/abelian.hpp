#ifndef ECG_ABELIAN_HPP
#define ECG_ABELIAN_HPP

#include <gmpxx.h>

#include <string>
#include <vector>

namespace ecg::abelian {

using Int = mpz_class;

/// Dense integer matrix with arbitrary-precision entries, row-major.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), e_(size_t(rows) * cols, 0) {}

    static IntMatrix identity(int n);
    static IntMatrix from_rows(const std::vector<std::vector<Int>>& rows);
    static IntMatrix from_cols(const std::vector<std::vector<Int>>& cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Int& at(int i, int j) { return e_[size_t(i) * cols_ + j]; }
    const Int& at(int i, int j) const { return e_[size_t(i) * cols_ + j]; }

    std::vector<Int> col(int j) const;
    std::vector<Int> row(int i) const;

    IntMatrix mul(const IntMatrix& o) const;
    std::vector<Int> apply(const std::vector<Int>& v) const; ///< matrix * column vector
    IntMatrix hstack(const IntMatrix& o) const;              ///< [this | o]
    static IntMatrix block_diag(const IntMatrix& a, const IntMatrix& b);

    /// Exact determinant (square matrices), fraction-free elimination.
    Int det() const;

    bool operator==(const IntMatrix&) const = default;
    std::string to_string() const;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<Int> e_;
};

/// U*M*V = D with U, V unimodular and D diagonal, d1 | d2 | ..., di >= 0.
/// uinv and vinv are the exact inverses of U and V.
struct SmithResult {
    IntMatrix u, d, v, uinv, vinv;
    std::vector<Int> diag; ///< length min(rows, cols)
    int rank = 0;          ///< number of nonzero diagonal entries
};

/// Pivot choice: minimal nonzero absolute value, ties broken by lowest row
/// then lowest column. Postcondition U*M*V = D is re-checked exactly.
SmithResult smith_normal_form(const IntMatrix& m);

/// Columns form a basis of { x : M x = 0 }; 0 columns when the kernel is
/// trivial.
IntMatrix kernel(const IntMatrix& m);

/// Basis of the lattice generated by the columns of g (a subgroup of Z^rows,
/// hence free). Full-column-rank result.
IntMatrix image_basis(const IntMatrix& g);

/// Canonical form of a finitely generated abelian group: Z^rank + sum of
/// Z/d_i with d_1 | d_2 | ..., every d_i >= 2. Two groups are isomorphic iff
/// the fields are equal.
struct FgAbelianGroup {
    int rank = 0;
    std::vector<Int> torsion;

    bool trivial() const { return rank == 0 && torsion.empty(); }
    bool operator==(const FgAbelianGroup&) const = default;

    static FgAbelianGroup free(int rank) { return {rank, {}}; }
    /// Canonicalize an arbitrary multiset of cyclic orders into a divisor
    /// chain (orders < 2 are dropped).
    static FgAbelianGroup of_cyclic_orders(int rank, const std::vector<Int>& orders);

    FgAbelianGroup direct_sum(const FgAbelianGroup& o) const;
    std::string to_string() const; ///< "0", "Z", "Z^2 + Z/4", ...
};

/// Z^n / colspan(R) with enough cached Smith data to reduce ambient vectors
/// to canonical coordinates.
class PresentedGroup {
public:
    PresentedGroup() = default;
    /// relations: n x k matrix whose column span is divided out.
    explicit PresentedGroup(IntMatrix relations);
    static PresentedGroup free(int ambient_rank);

    int ambient_rank() const { return relations_.rows(); }
    const IntMatrix& relations() const { return relations_; }
    const FgAbelianGroup& group() const { return canonical_; }

    /// Canonical coordinates of an ambient vector: torsion coordinates
    /// (reduced into [0, d_i)) in chain order, then free coordinates.
    /// Two vectors agree iff they differ by an element of colspan(R).
    std::vector<Int> class_of(const std::vector<Int>& ambient) const;

    int coordinate_dim() const { return int(canonical_.torsion.size()) + canonical_.rank; }

    /// Is the ambient vector in colspan(R)?
    bool is_relation(const std::vector<Int>& ambient) const;

    /// The same group re-presented on Z^(t+r) with relations diag(d_1..d_t)
    /// (t torsion slots first, then r free slots), together with the integer
    /// matrix carrying old ambient vectors to new ambient vectors.
    struct Canonicalized;
    Canonicalized canonical_presentation() const;

    static PresentedGroup direct_sum(const PresentedGroup& a, const PresentedGroup& b);

private:
    IntMatrix relations_;
    SmithResult snf_;
    FgAbelianGroup canonical_;
    std::vector<int> torsion_rows_; ///< rows of U giving torsion coordinates
    std::vector<int> free_rows_;    ///< rows of U giving free coordinates
    std::vector<Int> torsion_mod_;  ///< moduli aligned with torsion_rows_
};

struct PresentedGroup::Canonicalized {
    PresentedGroup group;
    IntMatrix projector; ///< (t+r) x old_ambient
};

/// Cokernel Z^n / colspan(M) as a presented group (n = rows of M).
PresentedGroup cokernel(const IntMatrix& m);

/// Kernel and cokernel of the map between presented groups induced by an
/// integer matrix on ambients (map: B.ambient x A.ambient). Throws when the
/// matrix does not carry A's relations into B's relations.
struct HomKernelCokernel {
    FgAbelianGroup kernel;
    /// lattice { x in Z^a : map(x) is a relation of B }, as columns
    IntMatrix kernel_lattice;
    PresentedGroup cokernel;
};
HomKernelCokernel hom_kernel_cokernel(const PresentedGroup& a, const PresentedGroup& b,
                                      const IntMatrix& map);

} // namespace ecg::abelian

#endif
