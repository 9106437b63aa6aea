#include "ecg/ktheory.hpp"

#include "ecg/error.hpp"

namespace ecg::ktheory {

using abelian::Int;

namespace {

/// Re-present k0 canonically (ambient = torsion + free slots) and map the
/// vertex classes through.
void canonicalize(KPair& k) {
    auto canon = k.k0.canonical_presentation();
    k.vertex_classes = canon.projector.mul(k.vertex_classes);
    k.k0 = std::move(canon.group);
}

} // namespace

KPair k_one_colored(const EdgeColoredGraph& g1) {
    require_valid(g1);
    if (g1.colors_used().size() > 1) throw Error("k_one_colored: expected 1-colored graph");
    const int nv = int(g1.vertices.size());

    std::vector<std::vector<Int>> cols;
    for (int v = 0; v < nv; ++v) {
        std::vector<Int> col(nv, 0);
        bool receives = false;
        for (const auto& e : g1.edges)
            if (g1.vertex_index(e.dst) == v) {
                receives = true;
                col[g1.vertex_index(e.src)] += 1;
            }
        if (!receives) continue; // vertices receiving nothing impose no relation
        col[v] -= 1;
        cols.push_back(std::move(col));
    }
    IntMatrix b = cols.empty() ? IntMatrix(nv, 0) : IntMatrix::from_cols(cols);

    KPair k;
    k.vertices = g1.vertices;
    k.k0 = abelian::cokernel(b);
    k.vertex_classes = IntMatrix::identity(nv);
    k.k1 = FgAbelianGroup::free(abelian::kernel(b).cols());
    canonicalize(k);
    return k;
}

IntMatrix alpha_matrix(const std::vector<const KPair*>& factors) {
    internal_check(!factors.empty(), "alpha_matrix without factors");
    const auto& verts = factors[0]->vertices;
    for (const auto* f : factors)
        if (f->vertices != verts) throw Error("alpha_matrix: factors disagree on the vertex set");
    // difference map: e_v -> ([p_v] in the first factor, minus the classes
    // in the others), so that following with the sum of the inclusions is
    // exact
    IntMatrix alpha = factors[0]->vertex_classes;
    for (size_t i = 1; i < factors.size(); ++i) {
        IntMatrix next(alpha.rows() + factors[i]->vertex_classes.rows(), int(verts.size()));
        for (int r = 0; r < alpha.rows(); ++r)
            for (int c = 0; c < alpha.cols(); ++c) next.at(r, c) = alpha.at(r, c);
        for (int r = 0; r < factors[i]->vertex_classes.rows(); ++r)
            for (int c = 0; c < int(verts.size()); ++c)
                next.at(alpha.rows() + r, c) = -factors[i]->vertex_classes.at(r, c);
        alpha = std::move(next);
    }
    return alpha;
}

KPair k_two_factor(const KPair& ka, const KPair& kb, FoldStep* audit) {
    if (ka.vertices != kb.vertices) throw Error("k_two_factor: vertex set mismatch");
    const int nv = int(ka.vertices.size());

    IntMatrix alpha = alpha_matrix({&ka, &kb});
    PresentedGroup target = PresentedGroup::direct_sum(ka.k0, kb.k0);
    auto hom = abelian::hom_kernel_cokernel(PresentedGroup::free(nv), target, alpha);
    internal_check(hom.kernel.torsion.empty(), "ker(alpha) must be free");

    KPair out;
    out.vertices = ka.vertices;
    out.k0 = hom.cokernel; // Z^(nA+nB) / (im alpha + relations)
    // [p_v] lands in the quotient through either inclusion; push it through
    // the first factor (the second route differs by an alpha column)
    out.vertex_classes = IntMatrix(ka.k0.ambient_rank() + kb.k0.ambient_rank(), nv);
    for (int r = 0; r < ka.vertex_classes.rows(); ++r)
        for (int v = 0; v < nv; ++v)
            out.vertex_classes.at(r, v) = ka.vertex_classes.at(r, v);
    out.k1 = ka.k1.direct_sum(kb.k1).direct_sum(FgAbelianGroup::free(hom.kernel.rank));
    if (audit) {
        audit->alpha = alpha;
        audit->relations = IntMatrix::block_diag(ka.k0.relations(), kb.k0.relations());
        audit->ker_alpha_rank = hom.kernel.rank;
        audit->k1_summands = ka.k1.direct_sum(kb.k1);
        audit->k0_result = out.k0.group();
        audit->k1_result = out.k1;
    }
    canonicalize(out);
    return out;
}

KPair k_edge_colored(const EdgeColoredGraph& g, std::vector<FoldStep>* audit) {
    require_valid(g);
    auto colors = g.colors_used();
    if (colors.empty()) {
        KPair k;
        k.vertices = g.vertices;
        k.k0 = PresentedGroup::free(int(g.vertices.size()));
        k.vertex_classes = IntMatrix::identity(int(g.vertices.size()));
        k.k1 = FgAbelianGroup::free(0);
        return k;
    }
    KPair acc = k_one_colored(monochrome_subgraph(g, colors[0]));
    for (size_t i = 1; i < colors.size(); ++i) {
        KPair next = k_one_colored(monochrome_subgraph(g, colors[i]));
        FoldStep step;
        acc = k_two_factor(acc, next, audit ? &step : nullptr);
        if (audit) audit->push_back(std::move(step));
    }
    return acc;
}

} // namespace ecg::ktheory
