#ifndef ECG_TESTS_ORACLES_HPP
#define ECG_TESTS_ORACLES_HPP

// Independent oracles used by the test suites. Everything here recomputes
// results from first principles and deliberately shares no code with the
// library implementations it checks.

#include <algorithm>
#include <functional>
#include <vector>

#include "ecg/abelian.hpp"
#include "ecg/graph.hpp"

namespace ecgtest {

using ecg::abelian::FgAbelianGroup;
using ecg::abelian::Int;
using ecg::abelian::IntMatrix;

// ---- coloring number by literal search over per-vertex relabelings ----

/// Minimum over k of: every vertex's color blocks admit an injective
/// relabeling into {1..k}. The injection is searched exhaustively instead of
/// comparing block counts.
inline int brute_force_coloring_number(const ecg::EdgeColoredGraph& g) {
    auto part = ecg::color_partition(g);
    std::vector<int> block_counts;
    for (const auto& v : g.vertices) {
        int m = int(part.at.at(v).size());
        if (m > 0) block_counts.push_back(m);
    }
    if (block_counts.empty()) return 0;
    for (int k = 1; k <= int(g.edges.size()); ++k) {
        bool all_fit = true;
        for (int m : block_counts) {
            std::vector<int> choice(m, 1);
            bool found = false;
            for (;;) {
                std::vector<int> sorted = choice;
                std::sort(sorted.begin(), sorted.end());
                if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end()) {
                    found = true;
                    break;
                }
                int i = m - 1;
                while (i >= 0 && choice[i] == k) choice[i--] = 1;
                if (i < 0) break;
                ++choice[i];
            }
            if (!found) {
                all_fit = false;
                break;
            }
        }
        if (all_fit) return k;
    }
    return int(g.edges.size());
}

// ---- abelian group invariants via determinantal divisors ----

inline Int minor_det(const IntMatrix& m, const std::vector<int>& rows,
                     const std::vector<int>& cols) {
    size_t n = rows.size();
    if (n == 1) return m.at(rows[0], cols[0]);
    Int acc = 0;
    std::vector<int> sub(rows.begin() + 1, rows.end());
    for (size_t j = 0; j < n; ++j) {
        std::vector<int> cc;
        for (size_t k = 0; k < n; ++k)
            if (k != j) cc.push_back(cols[k]);
        Int term = m.at(rows[0], cols[j]) * minor_det(m, sub, cc);
        acc += (j % 2 == 0) ? term : -term;
    }
    return acc;
}

inline void combinations(int n, int k, const std::function<void(const std::vector<int>&)>& f) {
    std::vector<int> idx(k);
    std::function<void(int, int)> go = [&](int start, int depth) {
        if (depth == k) {
            f(idx);
            return;
        }
        for (int i = start; i <= n - (k - depth); ++i) {
            idx[depth] = i;
            go(i + 1, depth + 1);
        }
    };
    go(0, 0);
}

/// Invariant factors of Z^rows / colspan(m) from the gcds of all i x i
/// minors: d_i = D_i / D_{i-1}. Independent of any elimination order.
inline FgAbelianGroup oracle_cokernel_invariants(const IntMatrix& m) {
    int n = m.rows();
    int maxk = std::min(m.rows(), m.cols());
    std::vector<Int> dd;
    for (int k = 1; k <= maxk; ++k) {
        Int g = 0;
        combinations(m.rows(), k, [&](const std::vector<int>& rows) {
            combinations(m.cols(), k, [&](const std::vector<int>& cols) {
                Int d = minor_det(m, rows, cols);
                if (d != 0) g = gcd(g, d);
            });
        });
        if (g == 0) break;
        dd.push_back(abs(g));
    }
    int rank = int(dd.size());
    std::vector<Int> torsion;
    Int prev = 1;
    for (int i = 0; i < rank; ++i) {
        Int d = dd[i] / prev;
        if (d >= 2) torsion.push_back(d);
        prev = dd[i];
    }
    return {n - rank, torsion};
}

/// Rank over the rationals by plain fraction elimination.
inline long rational_rank(const IntMatrix& m) {
    std::vector<std::vector<mpq_class>> a(m.rows(), std::vector<mpq_class>(m.cols()));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) a[i][j] = mpq_class(m.at(i, j));
    long rank = 0;
    for (int col = 0; col < m.cols() && rank < m.rows(); ++col) {
        int pivot = -1;
        for (int i = int(rank); i < m.rows(); ++i)
            if (a[i][col] != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        std::swap(a[rank], a[pivot]);
        for (int i = int(rank) + 1; i < m.rows(); ++i) {
            if (a[i][col] == 0) continue;
            mpq_class f = a[i][col] / a[rank][col];
            for (int j = col; j < m.cols(); ++j) a[i][j] -= f * a[rank][j];
        }
        ++rank;
    }
    return rank;
}

} // namespace ecgtest

#endif
