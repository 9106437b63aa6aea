#include "ecg/abelian.hpp"

#include <algorithm>
#include <sstream>

#include "ecg/error.hpp"

namespace ecg::abelian {

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Int>>& rows) {
    int r = int(rows.size());
    int c = r == 0 ? 0 : int(rows[0].size());
    IntMatrix m(r, c);
    for (int i = 0; i < r; ++i) {
        internal_check(int(rows[i].size()) == c, "ragged row list");
        for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

IntMatrix IntMatrix::from_cols(const std::vector<std::vector<Int>>& cols) {
    int c = int(cols.size());
    int r = c == 0 ? 0 : int(cols[0].size());
    IntMatrix m(r, c);
    for (int j = 0; j < c; ++j) {
        internal_check(int(cols[j].size()) == r, "ragged column list");
        for (int i = 0; i < r; ++i) m.at(i, j) = cols[j][i];
    }
    return m;
}

std::vector<Int> IntMatrix::col(int j) const {
    std::vector<Int> v(rows_);
    for (int i = 0; i < rows_; ++i) v[i] = at(i, j);
    return v;
}

std::vector<Int> IntMatrix::row(int i) const {
    std::vector<Int> v(cols_);
    for (int j = 0; j < cols_; ++j) v[j] = at(i, j);
    return v;
}

IntMatrix IntMatrix::mul(const IntMatrix& o) const {
    internal_check(cols_ == o.rows_, "matrix product shape mismatch");
    IntMatrix out(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Int& a = at(i, k);
            if (a == 0) continue;
            for (int j = 0; j < o.cols_; ++j) out.at(i, j) += a * o.at(k, j);
        }
    return out;
}

std::vector<Int> IntMatrix::apply(const std::vector<Int>& v) const {
    internal_check(int(v.size()) == cols_, "matrix apply shape mismatch");
    std::vector<Int> out(rows_, 0);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (at(i, j) != 0) out[i] += at(i, j) * v[j];
    return out;
}

IntMatrix IntMatrix::hstack(const IntMatrix& o) const {
    internal_check(rows_ == o.rows_ || cols_ == 0 || o.cols_ == 0, "hstack rows mismatch");
    int r = std::max(rows_, o.rows_);
    IntMatrix out(r, cols_ + o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out.at(i, j) = at(i, j);
    for (int i = 0; i < o.rows_; ++i)
        for (int j = 0; j < o.cols_; ++j) out.at(i, cols_ + j) = o.at(i, j);
    return out;
}

IntMatrix IntMatrix::block_diag(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix out(a.rows() + b.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out.at(i, j) = a.at(i, j);
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) out.at(a.rows() + i, a.cols() + j) = b.at(i, j);
    return out;
}

Int IntMatrix::det() const {
    internal_check(rows_ == cols_, "det of non-square matrix");
    int n = rows_;
    if (n == 0) return 1;
    // Bareiss fraction-free elimination
    IntMatrix a = *this;
    Int sign = 1, prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a.at(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (a.at(i, k) != 0) { p = i; break; }
            if (p < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(p, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                Int t = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
                mpz_divexact(a.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        prev = a.at(k, k);
    }
    return sign * a.at(n - 1, n - 1);
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rows_; ++i) {
        os << (i ? "; " : "");
        for (int j = 0; j < cols_; ++j) os << (j ? " " : "") << at(i, j);
    }
    os << "]";
    return os.str();
}

namespace {

struct SmithWork {
    IntMatrix d, u, uinv, v, vinv;

    void row_swap(int i, int j) {
        if (i == j) return;
        for (int c = 0; c < d.cols(); ++c) std::swap(d.at(i, c), d.at(j, c));
        for (int c = 0; c < u.cols(); ++c) std::swap(u.at(i, c), u.at(j, c));
        for (int r = 0; r < uinv.rows(); ++r) std::swap(uinv.at(r, i), uinv.at(r, j));
    }
    void row_addmul(int i, int j, const Int& k) { // row i += k * row j
        for (int c = 0; c < d.cols(); ++c) d.at(i, c) += k * d.at(j, c);
        for (int c = 0; c < u.cols(); ++c) u.at(i, c) += k * u.at(j, c);
        for (int r = 0; r < uinv.rows(); ++r) uinv.at(r, j) -= k * uinv.at(r, i);
    }
    void row_negate(int i) {
        for (int c = 0; c < d.cols(); ++c) d.at(i, c) = -d.at(i, c);
        for (int c = 0; c < u.cols(); ++c) u.at(i, c) = -u.at(i, c);
        for (int r = 0; r < uinv.rows(); ++r) uinv.at(r, i) = -uinv.at(r, i);
    }
    void col_swap(int i, int j) {
        if (i == j) return;
        for (int r = 0; r < d.rows(); ++r) std::swap(d.at(r, i), d.at(r, j));
        for (int r = 0; r < v.rows(); ++r) std::swap(v.at(r, i), v.at(r, j));
        for (int c = 0; c < vinv.cols(); ++c) std::swap(vinv.at(i, c), vinv.at(j, c));
    }
    void col_addmul(int i, int j, const Int& k) { // col i += k * col j
        for (int r = 0; r < d.rows(); ++r) d.at(r, i) += k * d.at(r, j);
        for (int r = 0; r < v.rows(); ++r) v.at(r, i) += k * v.at(r, j);
        for (int c = 0; c < vinv.cols(); ++c) vinv.at(j, c) -= k * vinv.at(i, c);
    }
};

} // namespace

SmithResult smith_normal_form(const IntMatrix& m) {
    const int r = m.rows(), c = m.cols();
    const int n = std::min(r, c);
    SmithWork w{m, IntMatrix::identity(r), IntMatrix::identity(r), IntMatrix::identity(c),
                IntMatrix::identity(c)};

    for (int t = 0; t < n; ++t) {
        for (;;) {
            // minimal nonzero |entry| in the trailing submatrix; ties by
            // lowest row, then column
            int pi = -1, pj = -1;
            Int best;
            for (int i = t; i < r; ++i)
                for (int j = t; j < c; ++j) {
                    if (w.d.at(i, j) == 0) continue;
                    Int a = abs(w.d.at(i, j));
                    if (pi < 0 || a < best) {
                        best = a;
                        pi = i;
                        pj = j;
                    }
                }
            if (pi < 0) { t = n; break; } // trailing submatrix is zero
            w.row_swap(t, pi);
            w.col_swap(t, pj);

            bool dirty = false;
            for (int i = t + 1; i < r; ++i)
                if (w.d.at(i, t) != 0) {
                    Int q = w.d.at(i, t) / w.d.at(t, t); // truncated: |rem| < |pivot|
                    if (q != 0) w.row_addmul(i, t, -q);
                    if (w.d.at(i, t) != 0) dirty = true;
                }
            for (int j = t + 1; j < c; ++j)
                if (w.d.at(t, j) != 0) {
                    Int q = w.d.at(t, j) / w.d.at(t, t);
                    if (q != 0) w.col_addmul(j, t, -q);
                    if (w.d.at(t, j) != 0) dirty = true;
                }
            if (dirty) continue;

            // pivot now alone in its row and column; enforce divisibility
            // over the trailing block
            bool fixed = true;
            for (int i = t + 1; i < r && fixed; ++i)
                for (int j = t + 1; j < c && fixed; ++j)
                    if (w.d.at(i, j) % w.d.at(t, t) != 0) {
                        w.row_addmul(t, i, 1);
                        fixed = false;
                    }
            if (!fixed) continue;
            if (w.d.at(t, t) < 0) w.row_negate(t);
            break;
        }
        if (t == n) break;
    }

    SmithResult out{w.u, w.d, w.v, w.uinv, w.vinv, {}, 0};
    for (int i = 0; i < n; ++i) {
        out.diag.push_back(w.d.at(i, i));
        if (w.d.at(i, i) != 0) ++out.rank;
    }
    internal_check(out.u.mul(m).mul(out.v) == out.d, "smith: U*M*V != D");
    internal_check(out.u.mul(out.uinv) == IntMatrix::identity(r), "smith: U*Uinv != I");
    internal_check(out.v.mul(out.vinv) == IntMatrix::identity(c), "smith: V*Vinv != I");
    for (int i = 0; i + 1 < n; ++i)
        internal_check(out.diag[i] == 0 ? out.diag[i + 1] == 0
                                        : out.diag[i + 1] % out.diag[i] == 0,
                       "smith: divisor chain broken");
    return out;
}

IntMatrix kernel(const IntMatrix& m) {
    auto s = smith_normal_form(m);
    std::vector<std::vector<Int>> basis;
    for (int j = 0; j < m.cols(); ++j) {
        bool zero = j >= int(s.diag.size()) || s.diag[j] == 0;
        if (zero) basis.push_back(s.v.col(j));
    }
    if (basis.empty()) return IntMatrix(m.cols(), 0);
    return IntMatrix::from_cols(basis);
}

IntMatrix image_basis(const IntMatrix& g) {
    auto s = smith_normal_form(g);
    std::vector<std::vector<Int>> basis;
    for (int i = 0; i < int(s.diag.size()); ++i) {
        if (s.diag[i] == 0) continue;
        auto b = s.uinv.col(i);
        for (auto& x : b) x *= s.diag[i];
        basis.push_back(std::move(b));
    }
    if (basis.empty()) return IntMatrix(g.rows(), 0);
    return IntMatrix::from_cols(basis);
}

FgAbelianGroup FgAbelianGroup::of_cyclic_orders(int rank, const std::vector<Int>& orders) {
    std::vector<Int> tors;
    for (const auto& d : orders) {
        internal_check(d >= 0, "negative cyclic order");
        if (d == 0)
            ++rank;
        else if (d >= 2)
            tors.push_back(d);
    }
    if (tors.size() > 1) {
        IntMatrix diag(int(tors.size()), int(tors.size()));
        for (size_t i = 0; i < tors.size(); ++i) diag.at(int(i), int(i)) = tors[i];
        auto s = smith_normal_form(diag);
        tors.clear();
        for (const auto& d : s.diag)
            if (d >= 2) tors.push_back(d);
    }
    return {rank, tors};
}

FgAbelianGroup FgAbelianGroup::direct_sum(const FgAbelianGroup& o) const {
    std::vector<Int> orders = torsion;
    orders.insert(orders.end(), o.torsion.begin(), o.torsion.end());
    return of_cyclic_orders(rank + o.rank, orders);
}

std::string FgAbelianGroup::to_string() const {
    if (trivial()) return "0";
    std::ostringstream os;
    bool first = true;
    auto sep = [&] {
        if (!first) os << " + ";
        first = false;
    };
    if (rank == 1) {
        sep();
        os << "Z";
    } else if (rank > 1) {
        sep();
        os << "Z^" << rank;
    }
    for (const auto& d : torsion) {
        sep();
        os << "Z/" << d;
    }
    return os.str();
}

PresentedGroup::PresentedGroup(IntMatrix relations)
    : relations_(std::move(relations)), snf_(smith_normal_form(relations_)) {
    const int n = relations_.rows();
    std::vector<Int> orders;
    for (int i = 0; i < n; ++i) {
        Int d = i < int(snf_.diag.size()) ? snf_.diag[i] : Int(0);
        if (d == 0) {
            free_rows_.push_back(i);
        } else if (d >= 2) {
            torsion_rows_.push_back(i);
            torsion_mod_.push_back(d);
        } // d == 1: coordinate dies
    }
    canonical_.rank = int(free_rows_.size());
    canonical_.torsion = torsion_mod_;
}

PresentedGroup PresentedGroup::free(int ambient_rank) {
    return PresentedGroup(IntMatrix(ambient_rank, 0));
}

std::vector<Int> PresentedGroup::class_of(const std::vector<Int>& ambient) const {
    if (int(ambient.size()) != ambient_rank()) throw Error("class_of: ambient dimension mismatch");
    auto w = snf_.u.apply(ambient);
    std::vector<Int> out;
    out.reserve(coordinate_dim());
    for (size_t k = 0; k < torsion_rows_.size(); ++k) {
        Int r;
        mpz_fdiv_r(r.get_mpz_t(), w[torsion_rows_[k]].get_mpz_t(), torsion_mod_[k].get_mpz_t());
        out.push_back(r);
    }
    for (int i : free_rows_) out.push_back(w[i]);
    return out;
}

bool PresentedGroup::is_relation(const std::vector<Int>& ambient) const {
    auto c = class_of(ambient);
    return std::all_of(c.begin(), c.end(), [](const Int& x) { return x == 0; });
}

PresentedGroup::Canonicalized PresentedGroup::canonical_presentation() const {
    const int t = int(torsion_rows_.size());
    const int fr = int(free_rows_.size());
    IntMatrix rel(t + fr, t);
    for (int k = 0; k < t; ++k) rel.at(k, k) = torsion_mod_[k];
    IntMatrix proj(t + fr, ambient_rank());
    for (int k = 0; k < t; ++k)
        for (int j = 0; j < ambient_rank(); ++j) proj.at(k, j) = snf_.u.at(torsion_rows_[k], j);
    for (int k = 0; k < fr; ++k)
        for (int j = 0; j < ambient_rank(); ++j) proj.at(t + k, j) = snf_.u.at(free_rows_[k], j);
    return {PresentedGroup(rel), proj};
}

PresentedGroup PresentedGroup::direct_sum(const PresentedGroup& a, const PresentedGroup& b) {
    return PresentedGroup(IntMatrix::block_diag(a.relations_, b.relations_));
}

PresentedGroup cokernel(const IntMatrix& m) { return PresentedGroup(m); }

HomKernelCokernel hom_kernel_cokernel(const PresentedGroup& a, const PresentedGroup& b,
                                      const IntMatrix& map) {
    if (map.rows() != b.ambient_rank() || map.cols() != a.ambient_rank())
        throw Error("hom: map shape does not match ambients");
    for (int j = 0; j < a.relations().cols(); ++j)
        if (!b.is_relation(map.apply(a.relations().col(j))))
            throw Error("hom: not well-defined (a relation maps outside the target relations)");

    PresentedGroup coker(map.hstack(b.relations()));

    // preimage lattice L = { x : map(x) in colspan(B relations) }
    IntMatrix stacked = map.hstack(b.relations());
    IntMatrix ker = kernel(stacked);
    IntMatrix gens(a.ambient_rank(), ker.cols());
    for (int i = 0; i < a.ambient_rank(); ++i)
        for (int j = 0; j < ker.cols(); ++j) gens.at(i, j) = ker.at(i, j);
    IntMatrix lattice = image_basis(gens);

    // express A's relations in the lattice basis and divide them out
    FgAbelianGroup kernel_group;
    if (lattice.cols() == 0) {
        kernel_group = FgAbelianGroup::free(0);
    } else {
        auto s = smith_normal_form(lattice);
        IntMatrix coords(lattice.cols(), a.relations().cols());
        for (int j = 0; j < a.relations().cols(); ++j) {
            auto w = s.u.apply(a.relations().col(j));
            std::vector<Int> z(lattice.cols());
            for (int i = 0; i < int(w.size()); ++i) {
                if (i < int(s.diag.size()) && s.diag[i] != 0) {
                    internal_check(w[i] % s.diag[i] == 0, "hom: relation not in preimage lattice");
                    z[i] = w[i] / s.diag[i];
                } else {
                    internal_check(w[i] == 0, "hom: relation not in preimage lattice");
                }
            }
            auto cvec = s.v.apply(z);
            for (int i = 0; i < lattice.cols(); ++i) coords.at(i, j) = cvec[i];
        }
        kernel_group = PresentedGroup(coords).group();
    }
    return {kernel_group, lattice, coker};
}

} // namespace ecg::abelian
