#include "zetareg/abgroup.hpp"

#include <algorithm>

namespace zetareg {

IntMatrix IntMatrix::identity(size_t n) {
    IntMatrix I(n, n);
    for (size_t i = 0; i < n; ++i) I.at(i, i) = 1;
    return I;
}

IntMatrix mat_mul(const IntMatrix& A, const IntMatrix& B) {
    if (A.cols != B.rows) throw Error("matrix shape mismatch in mat_mul");
    IntMatrix C(A.rows, B.cols);
    for (size_t i = 0; i < A.rows; ++i)
        for (size_t k = 0; k < A.cols; ++k) {
            const Int& aik = A.at(i, k);
            if (aik == 0) continue;
            for (size_t j = 0; j < B.cols; ++j)
                C.at(i, j) += aik * B.at(k, j);
        }
    return C;
}

Int mat_det(const IntMatrix& A) {
    if (A.rows != A.cols) throw Error("determinant of non-square matrix");
    size_t n = A.rows;
    if (n == 0) return 1;
    IntMatrix M = A;
    Int sign = 1, prev = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (M.at(k, k) == 0) {
            size_t swap_row = k + 1;
            while (swap_row < n && M.at(swap_row, k) == 0) ++swap_row;
            if (swap_row == n) return 0;
            for (size_t j = 0; j < n; ++j)
                std::swap(M.at(k, j), M.at(swap_row, j));
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j)
                M.at(i, j) = (M.at(i, j) * M.at(k, k) - M.at(i, k) * M.at(k, j)) / prev;
        prev = M.at(k, k);
    }
    return sign * M.at(n - 1, n - 1);
}

namespace {

struct SNFExt {
    IntMatrix U, Uinv, D, V, Vinv;
};

SNFExt snf_ext(const IntMatrix& A) {
    SNFExt r;
    r.D = A;
    r.U = IntMatrix::identity(A.rows);
    r.Uinv = IntMatrix::identity(A.rows);
    r.V = IntMatrix::identity(A.cols);
    r.Vinv = IntMatrix::identity(A.cols);
    IntMatrix& D = r.D;

    auto swap_rows = [&](size_t i, size_t j) {
        if (i == j) return;
        for (size_t c = 0; c < D.cols; ++c) std::swap(D.at(i, c), D.at(j, c));
        for (size_t c = 0; c < r.U.cols; ++c) std::swap(r.U.at(i, c), r.U.at(j, c));
        for (size_t rr = 0; rr < r.Uinv.rows; ++rr)
            std::swap(r.Uinv.at(rr, i), r.Uinv.at(rr, j));
    };
    auto swap_cols = [&](size_t i, size_t j) {
        if (i == j) return;
        for (size_t rr = 0; rr < D.rows; ++rr) std::swap(D.at(rr, i), D.at(rr, j));
        for (size_t rr = 0; rr < r.V.rows; ++rr) std::swap(r.V.at(rr, i), r.V.at(rr, j));
        for (size_t c = 0; c < r.Vinv.cols; ++c)
            std::swap(r.Vinv.at(i, c), r.Vinv.at(j, c));
    };
    // row_i -= q * row_t
    auto row_op = [&](size_t i, size_t t, const Int& q) {
        if (q == 0) return;
        for (size_t c = 0; c < D.cols; ++c) D.at(i, c) -= q * D.at(t, c);
        for (size_t c = 0; c < r.U.cols; ++c) r.U.at(i, c) -= q * r.U.at(t, c);
        for (size_t rr = 0; rr < r.Uinv.rows; ++rr)
            r.Uinv.at(rr, t) += q * r.Uinv.at(rr, i);
    };
    // col_j -= q * col_t
    auto col_op = [&](size_t j, size_t t, const Int& q) {
        if (q == 0) return;
        for (size_t rr = 0; rr < D.rows; ++rr) D.at(rr, j) -= q * D.at(rr, t);
        for (size_t rr = 0; rr < r.V.rows; ++rr) r.V.at(rr, j) -= q * r.V.at(rr, t);
        for (size_t c = 0; c < r.Vinv.cols; ++c)
            r.Vinv.at(t, c) += q * r.Vinv.at(j, c);
    };
    auto negate_row = [&](size_t i) {
        for (size_t c = 0; c < D.cols; ++c) D.at(i, c) = -D.at(i, c);
        for (size_t c = 0; c < r.U.cols; ++c) r.U.at(i, c) = -r.U.at(i, c);
        for (size_t rr = 0; rr < r.Uinv.rows; ++rr)
            r.Uinv.at(rr, i) = -r.Uinv.at(rr, i);
    };
    // Determinant-1 transform on the row pair (t, i):
    //   (row_t, row_i) <- (a11 row_t + a12 row_i, a21 row_t + a22 row_i)
    auto rows2 = [&](size_t t, size_t i, const Int& a11, const Int& a12,
                     const Int& a21, const Int& a22) {
        for (size_t c = 0; c < D.cols; ++c) {
            Int x = a11 * D.at(t, c) + a12 * D.at(i, c);
            Int y = a21 * D.at(t, c) + a22 * D.at(i, c);
            D.at(t, c) = std::move(x);
            D.at(i, c) = std::move(y);
        }
        for (size_t c = 0; c < r.U.cols; ++c) {
            Int x = a11 * r.U.at(t, c) + a12 * r.U.at(i, c);
            Int y = a21 * r.U.at(t, c) + a22 * r.U.at(i, c);
            r.U.at(t, c) = std::move(x);
            r.U.at(i, c) = std::move(y);
        }
        for (size_t rr = 0; rr < r.Uinv.rows; ++rr) {
            Int x = r.Uinv.at(rr, t) * a22 - r.Uinv.at(rr, i) * a21;
            Int y = -r.Uinv.at(rr, t) * a12 + r.Uinv.at(rr, i) * a11;
            r.Uinv.at(rr, t) = std::move(x);
            r.Uinv.at(rr, i) = std::move(y);
        }
    };
    // Same on the column pair (t, j):
    //   (col_t, col_j) <- (a11 col_t + a12 col_j, a21 col_t + a22 col_j)
    auto cols2 = [&](size_t t, size_t j, const Int& a11, const Int& a12,
                     const Int& a21, const Int& a22) {
        for (size_t rr = 0; rr < D.rows; ++rr) {
            Int x = a11 * D.at(rr, t) + a12 * D.at(rr, j);
            Int y = a21 * D.at(rr, t) + a22 * D.at(rr, j);
            D.at(rr, t) = std::move(x);
            D.at(rr, j) = std::move(y);
        }
        for (size_t rr = 0; rr < r.V.rows; ++rr) {
            Int x = a11 * r.V.at(rr, t) + a12 * r.V.at(rr, j);
            Int y = a21 * r.V.at(rr, t) + a22 * r.V.at(rr, j);
            r.V.at(rr, t) = std::move(x);
            r.V.at(rr, j) = std::move(y);
        }
        for (size_t c = 0; c < r.Vinv.cols; ++c) {
            Int x = a22 * r.Vinv.at(t, c) - a21 * r.Vinv.at(j, c);
            Int y = -a12 * r.Vinv.at(t, c) + a11 * r.Vinv.at(j, c);
            r.Vinv.at(t, c) = std::move(x);
            r.Vinv.at(j, c) = std::move(y);
        }
    };

    const size_t nmin = std::min(A.rows, A.cols);
    for (size_t t = 0; t < nmin; ++t) {
        // Locate the minimal nonzero entry of the trailing submatrix.
        size_t pi = t, pj = t;
        bool found = false;
        for (size_t i = t; i < D.rows; ++i)
            for (size_t j = t; j < D.cols; ++j) {
                if (D.at(i, j) == 0) continue;
                if (!found || cmp(abs(D.at(i, j)), abs(D.at(pi, pj))) < 0) {
                    pi = i; pj = j; found = true;
                }
            }
        if (!found) break;
        swap_rows(t, pi);
        swap_cols(t, pj);

        for (;;) {
            // Clear column t. An extended-gcd pair transform zeroes each
            // entry in one step (no quotient cascade), keeping growth tame.
            for (size_t i = t + 1; i < D.rows; ++i) {
                const Int& a = D.at(i, t);
                if (a == 0) continue;
                const Int& p = D.at(t, t);
                if (p != 0 && a % p == 0) {
                    row_op(i, t, a / p);
                    continue;
                }
                Int g, x, y;
                mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(),
                           p.get_mpz_t(), a.get_mpz_t());
                rows2(t, i, x, y, -(a / g), p / g);
            }
            // Clear row t; a genuine gcd step here shrinks the pivot and may
            // refill column t, so loop until both stay clear.
            bool pivot_changed = false;
            for (size_t j = t + 1; j < D.cols; ++j) {
                const Int& b = D.at(t, j);
                if (b == 0) continue;
                const Int& p = D.at(t, t);
                if (p != 0 && b % p == 0) {
                    col_op(j, t, b / p);
                    continue;
                }
                Int g, x, y;
                mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(),
                           p.get_mpz_t(), b.get_mpz_t());
                cols2(t, j, x, y, -(b / g), p / g);
                pivot_changed = true;
            }
            if (pivot_changed) continue;
            // Pivot must divide every remaining entry for the chain to hold.
            bool fixed = true;
            for (size_t i = t + 1; i < D.rows && fixed; ++i)
                for (size_t j = t + 1; j < D.cols && fixed; ++j)
                    if (D.at(i, j) % D.at(t, t) != 0) {
                        row_op(t, i, Int(-1)); // row_t += row_i
                        fixed = false;
                    }
            if (fixed) break;
        }
        if (D.at(t, t) < 0) negate_row(t);
    }
    return r;
}

void verify_snf(const IntMatrix& A, const SNFExt& r) {
    if (mat_mul(mat_mul(r.U, A), r.V) != r.D)
        throw Error("SNF verification failed: U*A*V != D");
    if (abs(mat_det(r.U)) != 1 || abs(mat_det(r.V)) != 1)
        throw Error("SNF verification failed: transform not unimodular");
    const size_t nmin = std::min(r.D.rows, r.D.cols);
    for (size_t i = 0; i + 1 < nmin; ++i) {
        const Int& a = r.D.at(i, i);
        const Int& b = r.D.at(i + 1, i + 1);
        if (a == 0 && b != 0)
            throw Error("SNF verification failed: zero before nonzero");
        if (a != 0 && b % a != 0)
            throw Error("SNF verification failed: divisibility chain broken");
    }
    for (size_t i = 0; i < r.D.rows; ++i)
        for (size_t j = 0; j < r.D.cols; ++j)
            if (i != j && r.D.at(i, j) != 0)
                throw Error("SNF verification failed: off-diagonal entry");
}

size_t snf_rank(const IntMatrix& D) {
    size_t rank = 0;
    const size_t nmin = std::min(D.rows, D.cols);
    while (rank < nmin && D.at(rank, rank) != 0) ++rank;
    return rank;
}

} // namespace

SNFResult snf(const IntMatrix& A) {
    SNFExt r = snf_ext(A);
    verify_snf(A, r);
    return {std::move(r.U), std::move(r.D), std::move(r.V)};
}

Int FGAbGroup::torsion_order() const {
    Int o = 1;
    for (const auto& d : torsion) o *= d;
    return o;
}

FGAbGroup fg_free(size_t rank) {
    return {rank, {}};
}

FGAbGroup fg_cyclic(const Int& n) {
    if (n == 0) return fg_free(1);
    Int a = abs(n);
    if (a == 1) return {};
    return {0, {a}};
}

IntMatrix fg_relations(const FGAbGroup& G) {
    IntMatrix R(G.ngens(), G.torsion.size());
    for (size_t i = 0; i < G.torsion.size(); ++i) R.at(i, i) = G.torsion[i];
    return R;
}

Canon canonicalize(const Presentation& P) {
    SNFExt r = snf_ext(P.rels);
    verify_snf(P.rels, r);
    const size_t g = P.gens;
    std::vector<size_t> torsion_idx, free_idx;
    std::vector<Int> torsion;
    const size_t nmin = std::min(r.D.rows, r.D.cols);
    for (size_t i = 0; i < g; ++i) {
        Int d = i < nmin ? r.D.at(i, i) : Int(0);
        if (d == 0) free_idx.push_back(i);
        else if (d > 1) { torsion_idx.push_back(i); torsion.push_back(d); }
    }
    Canon out;
    out.group.free_rank = free_idx.size();
    out.group.torsion = std::move(torsion);
    const size_t cg = out.group.ngens();
    out.to_can = IntMatrix(cg, g);
    out.from_can = IntMatrix(g, cg);
    size_t row = 0;
    auto copy_coord = [&](size_t i) {
        for (size_t j = 0; j < g; ++j) out.to_can.at(row, j) = r.U.at(i, j);
        for (size_t j = 0; j < g; ++j) out.from_can.at(j, row) = r.Uinv.at(j, i);
        ++row;
    };
    for (size_t i : torsion_idx) copy_coord(i);
    for (size_t i : free_idx) copy_coord(i);
    return out;
}

FGAbGroup group_from_presentation(size_t gens, const IntMatrix& rels) {
    if (rels.rows != gens) throw Error("relation matrix row count != gens");
    return canonicalize({gens, rels}).group;
}

std::optional<std::vector<Int>> solve_in_image(const IntMatrix& A,
                                               const std::vector<Int>& v) {
    if (v.size() != A.rows) throw Error("vector length mismatch in solve_in_image");
    SNFExt r = snf_ext(A);
    const size_t rank = snf_rank(r.D);
    // U*v must match D*y.
    std::vector<Int> uv(A.rows, Int(0));
    for (size_t i = 0; i < A.rows; ++i)
        for (size_t j = 0; j < A.rows; ++j) uv[i] += r.U.at(i, j) * v[j];
    std::vector<Int> y(A.cols, Int(0));
    for (size_t i = 0; i < A.rows; ++i) {
        if (i < rank) {
            if (uv[i] % r.D.at(i, i) != 0) return std::nullopt;
            y[i] = uv[i] / r.D.at(i, i);
        } else if (uv[i] != 0) {
            return std::nullopt;
        }
    }
    std::vector<Int> x(A.cols, Int(0));
    for (size_t i = 0; i < A.cols; ++i)
        for (size_t j = 0; j < A.cols; ++j) x[i] += r.V.at(i, j) * y[j];
    return x;
}

bool in_image(const IntMatrix& A, const std::vector<Int>& v) {
    return solve_in_image(A, v).has_value();
}

IntMatrix integer_kernel(const IntMatrix& A) {
    SNFExt r = snf_ext(A);
    const size_t rank = snf_rank(r.D);
    IntMatrix K(A.cols, A.cols - rank);
    for (size_t j = rank; j < A.cols; ++j)
        for (size_t i = 0; i < A.cols; ++i)
            K.at(i, j - rank) = r.V.at(i, j);
    return K;
}

IntMatrix lattice_preimage(const IntMatrix& B, const IntMatrix& C) {
    if (B.rows != C.rows) throw Error("row mismatch in lattice_preimage");
    IntMatrix A(B.rows, B.cols + C.cols);
    for (size_t i = 0; i < B.rows; ++i) {
        for (size_t j = 0; j < B.cols; ++j) A.at(i, j) = B.at(i, j);
        for (size_t j = 0; j < C.cols; ++j) A.at(i, B.cols + j) = C.at(i, j);
    }
    IntMatrix K = integer_kernel(A);
    IntMatrix out(B.cols, K.cols);
    for (size_t i = 0; i < B.cols; ++i)
        for (size_t j = 0; j < K.cols; ++j) out.at(i, j) = K.at(i, j);
    return out;
}

FGMap make_fg_map(FGAbGroup source, FGAbGroup target, IntMatrix matrix) {
    if (matrix.rows != target.ngens() || matrix.cols != source.ngens())
        throw MalformedMap("matrix shape does not match presentations");
    IntMatrix RT = fg_relations(target);
    for (size_t i = 0; i < source.torsion.size(); ++i) {
        std::vector<Int> v(target.ngens(), Int(0));
        for (size_t j = 0; j < target.ngens(); ++j)
            v[j] = source.torsion[i] * matrix.at(j, i);
        if (!in_image(RT, v))
            throw MalformedMap("map does not respect torsion relations");
    }
    return {std::move(source), std::move(target), std::move(matrix)};
}

FGMap fg_zero_map(FGAbGroup source, FGAbGroup target) {
    IntMatrix M(target.ngens(), source.ngens());
    return {std::move(source), std::move(target), std::move(M)};
}

FGMap fg_identity_map(const FGAbGroup& G) {
    return {G, G, IntMatrix::identity(G.ngens())};
}

FGMap fg_compose(const FGMap& g, const FGMap& f) {
    if (!(g.source == f.target))
        throw MalformedMap("composition source/target mismatch");
    return make_fg_map(f.source, g.target, mat_mul(g.matrix, f.matrix));
}

std::pair<FGAbGroup, FGAbGroup> ker_coker(const FGMap& f) {
    IntMatrix RT = fg_relations(f.target);
    IntMatrix RS = fg_relations(f.source);
    // Cokernel: target generators modulo image plus target relations.
    IntMatrix crels(f.target.ngens(), f.matrix.cols + RT.cols);
    for (size_t i = 0; i < f.target.ngens(); ++i) {
        for (size_t j = 0; j < f.matrix.cols; ++j)
            crels.at(i, j) = f.matrix.at(i, j);
        for (size_t j = 0; j < RT.cols; ++j)
            crels.at(i, f.matrix.cols + j) = RT.at(i, j);
    }
    FGAbGroup coker = group_from_presentation(f.target.ngens(), crels);
    // Kernel: lattice {x : f(x) in relations of target}, modulo source
    // relations.
    IntMatrix B = lattice_preimage(f.matrix, RT);
    IntMatrix krels = lattice_preimage(B, RS);
    FGAbGroup ker = group_from_presentation(B.cols, krels);
    return {std::move(ker), std::move(coker)};
}

Rat chi(const FGMap& f) {
    auto [ker, coker] = ker_coker(f);
    if (ker.free_rank != 0 || coker.free_rank != 0)
        throw NotFQ("kernel or cokernel has positive free rank");
    return Rat(coker.torsion_order()) / Rat(ker.torsion_order());
}

Rat chi(const FQMap& f) {
    switch (f.divisible) {
    case DivisibleBehavior::Iso:
    case DivisibleBehavior::Zero:
        // Divisible summands contribute no torsion either way.
        break;
    case DivisibleBehavior::Unspecified: {
        const auto& sr = f.source.divisible_rank;
        const auto& tr = f.target.divisible_rank;
        bool both_zero = sr && tr && *sr == 0 && *tr == 0;
        if (!both_zero)
            throw NotFQ("unspecified divisible-part behavior");
        break;
    }
    }
    return chi(f.finite_map);
}

ChiCompositionReport chi_compose_check(const FGMap& f, const FGMap& g) {
    ChiCompositionReport rep;
    rep.chi_f = chi(f);
    rep.chi_g = chi(g);
    rep.chi_gf = chi(fg_compose(g, f));
    rep.ok = rep.chi_gf == rep.chi_f * rep.chi_g;
    return rep;
}

namespace {

bool maps_equal_mod_relations(const FGMap& a, const FGMap& b) {
    if (!(a.source == b.source) || !(a.target == b.target)) return false;
    IntMatrix RT = fg_relations(a.target);
    for (size_t j = 0; j < a.matrix.cols; ++j) {
        std::vector<Int> diff(a.matrix.rows, Int(0));
        for (size_t i = 0; i < a.matrix.rows; ++i)
            diff[i] = a.matrix.at(i, j) - b.matrix.at(i, j);
        if (!in_image(RT, diff)) return false;
    }
    return true;
}

bool row_is_exact(const FGMap& incl, const FGMap& proj) {
    FGComplex row;
    row.groups = {proj.target, incl.target, incl.source};
    row.diffs = {proj, incl};
    try {
        validate_complex(row);
    } catch (const NotAComplex&) {
        return false;
    }
    for (const auto& H : homology(row))
        if (!H.is_trivial()) return false;
    return true;
}

} // namespace

ChiSnakeReport chi_snake_check(const SnakeDiagram& d) {
    if (!row_is_exact(d.top_incl, d.top_proj) ||
        !row_is_exact(d.bot_incl, d.bot_proj))
        throw RowsNotExact();
    if (!maps_equal_mod_relations(fg_compose(d.bot_incl, d.f),
                                  fg_compose(d.g, d.top_incl)) ||
        !maps_equal_mod_relations(fg_compose(d.bot_proj, d.g),
                                  fg_compose(d.h, d.top_proj)))
        throw Error("snake diagram squares do not commute");
    ChiSnakeReport rep;
    rep.chi_f = chi(d.f);
    rep.chi_g = chi(d.g);
    rep.chi_h = chi(d.h);
    rep.ok = rep.chi_f * rep.chi_h == rep.chi_g;
    return rep;
}

void validate_complex(const FGComplex& C) {
    if (C.groups.empty()) return;
    if (C.diffs.size() + 1 != C.groups.size())
        throw NotAComplex("differential count must be group count - 1");
    for (size_t i = 0; i < C.diffs.size(); ++i) {
        if (!(C.diffs[i].source == C.groups[i + 1]) ||
            !(C.diffs[i].target == C.groups[i]))
            throw NotAComplex("differential endpoints mismatch");
    }
    for (size_t i = 0; i + 1 < C.diffs.size(); ++i) {
        FGMap dd = fg_compose(C.diffs[i], C.diffs[i + 1]);
        if (!maps_equal_mod_relations(dd, fg_zero_map(dd.source, dd.target)))
            throw NotAComplex("d o d != 0");
    }
}

HomologyData homology_detailed(const FGComplex& C) {
    validate_complex(C);
    HomologyData out;
    const size_t n = C.groups.size();
    for (size_t i = 0; i < n; ++i) {
        const size_t g = C.groups[i].ngens();
        IntMatrix cycles;
        if (i == 0) {
            cycles = IntMatrix::identity(g);
        } else {
            const FGMap& down = C.diffs[i - 1];
            cycles = lattice_preimage(down.matrix, fg_relations(down.target));
        }
        // Relations: chain relations plus incoming boundaries, pulled back
        // through the cycle basis.
        IntMatrix RS = fg_relations(C.groups[i]);
        size_t bcols = i + 1 < n ? C.diffs[i].matrix.cols : 0;
        IntMatrix killers(g, RS.cols + bcols);
        for (size_t r = 0; r < g; ++r) {
            for (size_t j = 0; j < RS.cols; ++j) killers.at(r, j) = RS.at(r, j);
            for (size_t j = 0; j < bcols; ++j)
                killers.at(r, RS.cols + j) = C.diffs[i].matrix.at(r, j);
        }
        IntMatrix hrels = lattice_preimage(cycles, killers);
        out.canon.push_back(canonicalize({cycles.cols, hrels}));
        out.cycle_basis.push_back(std::move(cycles));
    }
    return out;
}

std::vector<FGAbGroup> homology(const FGComplex& C) {
    HomologyData data = homology_detailed(C);
    std::vector<FGAbGroup> out;
    out.reserve(data.canon.size());
    for (const auto& c : data.canon) out.push_back(c.group);
    return out;
}

FGMap induced_map_between(const HomologyData& hs, size_t si,
                          const HomologyData& ht, size_t ti,
                          const IntMatrix& chain_matrix) {
    const IntMatrix& Bs = hs.cycle_basis[si];
    const IntMatrix& Bt = ht.cycle_basis[ti];
    IntMatrix FBs = mat_mul(chain_matrix, Bs);
    IntMatrix Z(Bt.cols, Bs.cols);
    for (size_t j = 0; j < FBs.cols; ++j) {
        std::vector<Int> v(FBs.rows, Int(0));
        for (size_t i = 0; i < FBs.rows; ++i) v[i] = FBs.at(i, j);
        auto sol = solve_in_image(Bt, v);
        if (!sol)
            throw Error("chain map does not send cycles to cycles");
        for (size_t i = 0; i < Bt.cols; ++i) Z.at(i, j) = (*sol)[i];
    }
    const Canon& cs = hs.canon[si];
    const Canon& ct = ht.canon[ti];
    IntMatrix M = mat_mul(mat_mul(ct.to_can, Z), cs.from_can);
    return make_fg_map(cs.group, ct.group, std::move(M));
}

bool exact_at(const FGMap& g, const FGMap& h) {
    if (!(g.target == h.source)) throw Error("exact_at: maps not composable");
    FGComplex piece;
    piece.groups = {h.target, g.target, g.source};
    piece.diffs = {h, g};
    try {
        validate_complex(piece); // also requires h o g == 0
    } catch (const NotAComplex&) {
        return false;
    }
    return homology(piece)[1].is_trivial();
}

FGMap induced_homology_map(const FGComplexMap& f, const HomologyData& hs,
                           const HomologyData& ht, size_t index) {
    const IntMatrix& Bs = hs.cycle_basis[index];
    const IntMatrix& Bt = ht.cycle_basis[index];
    const IntMatrix& F = f.levels[index].matrix;
    IntMatrix FBs = mat_mul(F, Bs);
    // Express each mapped cycle in the target cycle basis.
    IntMatrix Z(Bt.cols, Bs.cols);
    for (size_t j = 0; j < FBs.cols; ++j) {
        std::vector<Int> v(FBs.rows, Int(0));
        for (size_t i = 0; i < FBs.rows; ++i) v[i] = FBs.at(i, j);
        auto sol = solve_in_image(Bt, v);
        if (!sol)
            throw Error("chain map does not send cycles to cycles");
        for (size_t i = 0; i < Bt.cols; ++i) Z.at(i, j) = (*sol)[i];
    }
    const Canon& cs = hs.canon[index];
    const Canon& ct = ht.canon[index];
    IntMatrix M = mat_mul(mat_mul(ct.to_can, Z), cs.from_can);
    return make_fg_map(cs.group, ct.group, std::move(M));
}

ChiComplexReport chi_complex_check(const FGComplexMap& f) {
    if (f.source.lowest != f.target.lowest ||
        f.source.groups.size() != f.target.groups.size() ||
        f.levels.size() != f.source.groups.size())
        throw HypothesisViolated("complexes not aligned");
    // Chain-map squares must commute.
    for (size_t i = 0; i + 1 < f.levels.size(); ++i) {
        FGMap lhs = fg_compose(f.target.diffs[i], f.levels[i + 1]);
        FGMap rhs = fg_compose(f.levels[i], f.source.diffs[i]);
        if (!maps_equal_mod_relations(lhs, rhs))
            throw HypothesisViolated("level maps do not commute with differentials");
    }
    ChiComplexReport rep;
    rep.level_product = 1;
    for (size_t i = 0; i < f.levels.size(); ++i) {
        auto [ker, coker] = ker_coker(f.levels[i]);
        if (ker.free_rank != 0 || coker.free_rank != 0)
            throw HypothesisViolated("level map kernel/cokernel not finite");
        Rat c = Rat(coker.torsion_order()) / Rat(ker.torsion_order());
        int deg = f.source.lowest + static_cast<int>(i);
        if (deg % 2 == 0) rep.level_product *= c;
        else rep.level_product /= c;
    }
    HomologyData hs = homology_detailed(f.source);
    HomologyData ht = homology_detailed(f.target);
    rep.homology_product = 1;
    for (size_t i = 0; i < f.levels.size(); ++i) {
        Rat c = chi(induced_homology_map(f, hs, ht, i));
        int deg = f.source.lowest + static_cast<int>(i);
        if (deg % 2 == 0) rep.homology_product *= c;
        else rep.homology_product /= c;
    }
    rep.ok = rep.level_product == rep.homology_product;
    return rep;
}

FGAbGroup localize(const FGAbGroup& G, const Int& p) {
    std::vector<Int> torsion;
    for (Int d : G.torsion) {
        while (d % p == 0) d /= p;
        if (d > 1) torsion.push_back(d);
    }
    FGAbGroup out;
    out.free_rank = G.free_rank;
    out.torsion = std::move(torsion);
    return out;
}

} // namespace zetareg
