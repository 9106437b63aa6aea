#ifndef ECG_KTHEORY_HPP
#define ECG_KTHEORY_HPP

#include <string>
#include <vector>

#include "ecg/abelian.hpp"
#include "ecg/graph.hpp"

namespace ecg::ktheory {

using abelian::FgAbelianGroup;
using abelian::IntMatrix;
using abelian::PresentedGroup;

/// K0 (as a presented group carrying a distinguished class vector per
/// vertex) and K1 of one algebra over a fixed vertex set. K0 is kept in a
/// canonical presentation, so its ambient stays small across fold steps.
struct KPair {
    std::vector<std::string> vertices; ///< the shared vertex set, in order
    PresentedGroup k0;
    IntMatrix vertex_classes; ///< k0.ambient_rank() x |vertices|, column per vertex
    FgAbelianGroup k1;

    FgAbelianGroup k0_group() const { return k0.group(); }
    /// canonical coordinates of [p_v]
    std::vector<abelian::Int> vertex_class_of(int v) const { return k0.class_of(vertex_classes.col(v)); }
};

/// Data retained from one fold step so the exact sequence can be audited:
/// 0 -> K1(A)+K1(B) -> K1(new) -> ker(alpha) -> K0(A)+K0(B) -> K0(new) -> 0.
struct FoldStep {
    IntMatrix alpha;          ///< stacked vertex classes, ambient coordinates
    IntMatrix relations;      ///< block diagonal relations of K0(A)+K0(B)
    int ker_alpha_rank = 0;
    FgAbelianGroup k1_summands; ///< K1(A) + K1(B)
    FgAbelianGroup k0_result;
    FgAbelianGroup k1_result;
};

/// K-groups of a 1-colored graph via the vertex-matrix presentation:
/// each vertex receiving edges contributes the relation
/// (sum over incoming e of e_{s(e)}) - e_v; K0 is the cokernel and K1 the
/// kernel rank of that matrix. Throws on multicolored input.
KPair k_one_colored(const EdgeColoredGraph& g1);

/// The middle arrow of the exact sequence: e_v -> ([p_v] in each factor's
/// ambient presentation), stacked as a difference map (first factor
/// positive, the rest negated) so that composing with the sum of the
/// inclusions gives zero.
IntMatrix alpha_matrix(const std::vector<const KPair*>& factors);

/// One step of the fold: combine the K-pairs of two algebras amalgamated
/// over the span of the vertex projections. The K1 extension splits because
/// ker(alpha) is a subgroup of the free group Z^V.
KPair k_two_factor(const KPair& ka, const KPair& kb, FoldStep* audit = nullptr);

/// K-groups of an edge-colored graph: fold the monochrome factors in color
/// order through k_two_factor. 0 colors: K0 = Z^V, K1 = 0; 1 color:
/// k_one_colored.
KPair k_edge_colored(const EdgeColoredGraph& g, std::vector<FoldStep>* audit = nullptr);

} // namespace ecg::ktheory

#endif
