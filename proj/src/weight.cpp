#include "zetareg/weight.hpp"

#include <algorithm>

namespace zetareg {

int SNCConfig::face(int stratum, int drop) const {
    auto it = faces.find({stratum, drop});
    if (it == faces.end())
        throw IncoherentIncidence("missing face (" + std::to_string(stratum) +
                                  ", drop " + std::to_string(drop) + ")");
    return it->second;
}

namespace {

struct StratumPos {
    int level;
    size_t index;
};

std::map<int, StratumPos> index_strata(const SNCConfig& cfg) {
    std::map<int, StratumPos> pos;
    for (size_t a = 0; a < cfg.levels.size(); ++a)
        for (size_t i = 0; i < cfg.levels[a].size(); ++i) {
            int id = cfg.levels[a][i];
            if (!pos.emplace(id, StratumPos{static_cast<int>(a), i}).second)
                throw IncoherentIncidence("duplicate stratum id " +
                                          std::to_string(id));
        }
    return pos;
}

} // namespace

void validate_snc(const SNCConfig& cfg) {
    if (cfg.levels.size() > static_cast<size_t>(cfg.dim) + 1)
        throw IncoherentIncidence("more than dim + 1 levels");
    auto pos = index_strata(cfg);
    for (size_t a = 1; a < cfg.levels.size(); ++a) {
        for (int id : cfg.levels[a]) {
            for (int j = 0; j < static_cast<int>(a); ++j) {
                int t = cfg.face(id, j);
                auto it = pos.find(t);
                if (it == pos.end() ||
                    it->second.level != static_cast<int>(a) - 1)
                    throw IncoherentIncidence(
                        "face target at wrong level for stratum " +
                        std::to_string(id));
            }
        }
    }
    // Simplicial identity: the two composite faces agree for every pair of
    // drop positions, which is what makes d o d = 0.
    for (size_t a = 2; a < cfg.levels.size(); ++a) {
        for (int id : cfg.levels[a]) {
            for (int j = 0; j + 1 < static_cast<int>(a); ++j)
                for (int jp = j + 1; jp < static_cast<int>(a); ++jp) {
                    int via1 = cfg.face(cfg.face(id, jp), j);
                    int via2 = cfg.face(cfg.face(id, j), jp - 1);
                    if (via1 != via2)
                        throw IncoherentIncidence(
                            "simplicial identity fails at stratum " +
                            std::to_string(id));
                }
        }
    }
}

namespace {

// Differential matrix from level a+1 to level a: alternating sum of face
// maps in stratum-id basis order.
IntMatrix level_differential(const SNCConfig& cfg,
                             const std::map<int, StratumPos>& pos, size_t a) {
    IntMatrix M(cfg.levels[a].size(), cfg.levels[a + 1].size());
    for (size_t c = 0; c < cfg.levels[a + 1].size(); ++c) {
        int id = cfg.levels[a + 1][c];
        for (int j = 0; j <= static_cast<int>(a); ++j) {
            int t = cfg.face(id, j);
            size_t r = pos.at(t).index;
            if (j % 2 == 0) M.at(r, c) += 1;
            else M.at(r, c) -= 1;
        }
    }
    return M;
}

} // namespace

WeightComplex build_snc_complex(const SNCConfig& cfg, const Lambda& lambda) {
    validate_snc(cfg);
    auto pos = index_strata(cfg);
    WeightComplex W;
    W.lambda = lambda;
    for (const auto& level : cfg.levels)
        W.complex.groups.push_back(fg_free(level.size()));
    for (size_t a = 0; a + 1 < cfg.levels.size(); ++a) {
        IntMatrix M = level_differential(cfg, pos, a);
        W.complex.diffs.push_back(
            make_fg_map(W.complex.groups[a + 1], W.complex.groups[a], M));
    }
    try {
        validate_complex(W.complex);
    } catch (const NotAComplex&) {
        throw IncoherentIncidence("boundary complex differentials do not square to zero");
    }
    return W;
}

std::vector<FGAbGroup> weight_homology(const WeightComplex& W) {
    std::vector<FGAbGroup> H = homology(W.complex);
    if (W.lambda.invert_p)
        for (auto& G : H) G = localize(G, W.lambda.p);
    return H;
}

namespace {

FGComplex pad_complex(FGComplex C, size_t length) {
    while (C.groups.size() < length) {
        FGAbGroup trivial;
        if (!C.groups.empty())
            C.diffs.push_back(fg_zero_map(trivial, C.groups.back()));
        C.groups.push_back(trivial);
    }
    return C;
}

} // namespace

LocalizationReport localization_check(const SNCConfig& cfg, const Lambda& lambda) {
    validate_snc(cfg);
    auto pos = index_strata(cfg);
    const size_t L = cfg.levels.size(); // levels 0..L-1
    const size_t N = L;                 // cone top degree

    // X-bar: constant complex in degree 0.
    FGComplex CX;
    CX.groups.push_back(fg_free(cfg.levels[0].size()));

    // Boundary Y: levels 1..L-1 re-indexed down by one; differentials are
    // the same alternating sums.
    FGComplex CY;
    for (size_t a = 1; a < L; ++a) CY.groups.push_back(fg_free(cfg.levels[a].size()));
    for (size_t a = 1; a + 1 < L; ++a) {
        IntMatrix M = level_differential(cfg, pos, a);
        CY.diffs.push_back(
            make_fg_map(CY.groups[a], CY.groups[a - 1], M));
    }
    if (CY.groups.empty()) CY.groups.push_back(FGAbGroup{});

    // Mapping cone of CY -> CX: level-n strata in degree n, with the upper
    // differentials negated.
    FGComplex cone;
    for (size_t a = 0; a < L; ++a) cone.groups.push_back(fg_free(cfg.levels[a].size()));
    for (size_t a = 0; a + 1 < L; ++a) {
        IntMatrix M = level_differential(cfg, pos, a);
        if (a >= 1)
            for (auto& x : M.a) x = -x;
        cone.diffs.push_back(
            make_fg_map(cone.groups[a + 1], cone.groups[a], M));
    }

    CX = pad_complex(std::move(CX), N + 1);
    CY = pad_complex(std::move(CY), N + 1);
    cone = pad_complex(std::move(cone), N + 1);

    HomologyData hY = homology_detailed(CY);
    HomologyData hX = homology_detailed(CX);
    HomologyData hU = homology_detailed(cone);

    LocalizationReport rep;
    for (size_t n = 0; n < L; ++n) {
        FGAbGroup H = hU.canon[n].group;
        if (lambda.invert_p) H = localize(H, lambda.p);
        rep.homology_U.push_back(H);
    }

    // Chain-level maps for the long sequence.
    auto fstar = [&](size_t n) {
        IntMatrix M(CX.groups[n].ngens(), CY.groups[n].ngens());
        if (n == 0 && L >= 2) {
            // face at drop position 0: level 1 -> level 0
            for (size_t c = 0; c < cfg.levels[1].size(); ++c) {
                int t = cfg.face(cfg.levels[1][c], 0);
                M.at(pos.at(t).index, c) = 1;
            }
        }
        return induced_map_between(hY, n, hX, n, M);
    };
    auto iota = [&](size_t n) {
        IntMatrix M(cone.groups[n].ngens(), CX.groups[n].ngens());
        if (n == 0)
            for (size_t i = 0; i < CX.groups[0].ngens(); ++i) M.at(i, i) = 1;
        return induced_map_between(hX, n, hU, n, M);
    };
    auto connecting = [&](size_t n) {
        // cone_n is the level-n part, which is CY_{n-1} on the nose.
        IntMatrix M(CY.groups[n - 1].ngens(), cone.groups[n].ngens());
        if (n >= 1 && CY.groups[n - 1].ngens() == cone.groups[n].ngens())
            for (size_t i = 0; i < M.rows; ++i) M.at(i, i) = 1;
        return induced_map_between(hU, n, hY, n - 1, M);
    };

    // Assemble ... -> H_n(Y) -> H_n(X) -> H_n(U) -> H_{n-1}(Y) -> ... and
    // check exactness at every node, with zero caps at both ends.
    std::vector<FGMap> seq;
    std::vector<int> degrees;
    for (size_t n = N; n-- > 0;) {
        seq.push_back(fstar(n));
        degrees.push_back(static_cast<int>(n));
        seq.push_back(iota(n));
        degrees.push_back(static_cast<int>(n));
        if (n >= 1) {
            seq.push_back(connecting(n));
            degrees.push_back(static_cast<int>(n));
        }
    }
    seq.insert(seq.begin(), fg_zero_map(FGAbGroup{}, seq.front().source));
    degrees.insert(degrees.begin(), static_cast<int>(N));
    seq.push_back(fg_zero_map(seq.back().target, FGAbGroup{}));
    degrees.push_back(0);

    for (size_t i = 0; i + 1 < seq.size(); ++i) {
        if (!exact_at(seq[i], seq[i + 1])) {
            rep.exact = false;
            rep.failing_degree = degrees[i + 1];
            return rep;
        }
    }
    return rep;
}

namespace {

struct SumGroup {
    FGAbGroup group;
    IntMatrix to_can, from_can;
    std::vector<size_t> offsets; // generator offset per part
};

SumGroup direct_sum(const std::vector<const FGAbGroup*>& parts) {
    size_t gens = 0, rels = 0;
    SumGroup out;
    for (const auto* p : parts) {
        out.offsets.push_back(gens);
        gens += p->ngens();
        rels += p->torsion.size();
    }
    IntMatrix R(gens, rels);
    size_t go = 0, ro = 0;
    for (const auto* p : parts) {
        IntMatrix pr = fg_relations(*p);
        for (size_t i = 0; i < pr.rows; ++i)
            for (size_t j = 0; j < pr.cols; ++j)
                R.at(go + i, ro + j) = pr.at(i, j);
        go += p->ngens();
        ro += pr.cols;
    }
    Canon c = canonicalize({gens, R});
    out.group = std::move(c.group);
    out.to_can = std::move(c.to_can);
    out.from_can = std::move(c.from_can);
    return out;
}

} // namespace

void validate_double_complex(const DoubleComplexFG& D) {
    const size_t na = D.entry.size();
    for (size_t a = 0; a < na; ++a) {
        const size_t nb = D.entry[a].size();
        for (size_t b = 0; b < nb; ++b) {
            if (a >= 1) {
                const FGMap& h = D.horiz[a][b];
                if (!(h.source == D.entry[a][b]) || !(h.target == D.entry[a - 1][b]))
                    throw SignIncoherent("horizontal map endpoints mismatch");
            }
            if (b >= 1) {
                const FGMap& v = D.vert[a][b];
                if (!(v.source == D.entry[a][b]) || !(v.target == D.entry[a][b - 1]))
                    throw SignIncoherent("vertical map endpoints mismatch");
            }
        }
    }
    auto zero_composite = [](const FGMap& g, const FGMap& f) {
        FGMap gf = fg_compose(g, f);
        for (const auto& x : gf.matrix.a)
            if (x != 0) {
                // nonzero entries may still vanish modulo target torsion
                return false;
            }
        return true;
    };
    for (size_t a = 0; a < na; ++a)
        for (size_t b = 0; b < D.entry[a].size(); ++b) {
            if (a >= 2 && !zero_composite(D.horiz[a - 1][b], D.horiz[a][b]))
                throw SignIncoherent("rows are not complexes");
            if (b >= 2 && !zero_composite(D.vert[a][b - 1], D.vert[a][b]))
                throw SignIncoherent("columns are not complexes");
            if (a >= 1 && b >= 1) {
                FGMap hv = fg_compose(D.horiz[a][b - 1], D.vert[a][b]);
                FGMap vh = fg_compose(D.vert[a - 1][b], D.horiz[a][b]);
                if (!(hv.matrix == vh.matrix))
                    throw SignIncoherent("squares do not commute");
            }
        }
}

FGComplex total_complex(const DoubleComplexFG& D) {
    validate_double_complex(D);
    const size_t na = D.entry.size();
    size_t nb = 0;
    for (const auto& col : D.entry) nb = std::max(nb, col.size());
    const size_t nn = na + nb; // total degrees 0 .. na+nb-2

    // Anti-diagonal layout per total degree.
    struct Slot { size_t a, b; };
    std::vector<std::vector<Slot>> slots(nn);
    std::vector<SumGroup> sums;
    for (size_t n = 0; n + 1 < nn + 1; ++n) {
        std::vector<const FGAbGroup*> parts;
        for (size_t a = 0; a < na; ++a) {
            size_t b = n - a;
            if (a > n || b >= D.entry[a].size()) continue;
            slots[n].push_back({a, b});
            parts.push_back(&D.entry[a][b]);
        }
        sums.push_back(direct_sum(parts));
    }
    size_t top = sums.size();
    while (top > 1 && sums[top - 1].group.is_trivial() && slots[top - 1].empty())
        --top;

    FGComplex tot;
    for (size_t n = 0; n < top; ++n) tot.groups.push_back(sums[n].group);
    for (size_t n = 1; n < top; ++n) {
        size_t src_gens = 0, dst_gens = 0;
        for (const auto& s : slots[n]) src_gens += D.entry[s.a][s.b].ngens();
        for (const auto& s : slots[n - 1]) dst_gens += D.entry[s.a][s.b].ngens();
        IntMatrix M(dst_gens, src_gens);
        for (size_t si = 0; si < slots[n].size(); ++si) {
            const auto [a, b] = slots[n][si];
            size_t so = sums[n].offsets[si];
            for (size_t ti = 0; ti < slots[n - 1].size(); ++ti) {
                const auto [ta, tb] = slots[n - 1][ti];
                size_t to = sums[n - 1].offsets[ti];
                const IntMatrix* block = nullptr;
                int sign = 1;
                if (ta + 1 == a && tb == b) {
                    block = &D.horiz[a][b].matrix;
                } else if (ta == a && tb + 1 == b) {
                    block = &D.vert[a][b].matrix;
                    sign = (a % 2 == 0) ? 1 : -1;
                }
                if (!block) continue;
                for (size_t i = 0; i < block->rows; ++i)
                    for (size_t j = 0; j < block->cols; ++j)
                        M.at(to + i, so + j) = Int(sign) * block->at(i, j);
            }
        }
        IntMatrix can = mat_mul(mat_mul(sums[n - 1].to_can, M), sums[n].from_can);
        tot.diffs.push_back(
            make_fg_map(sums[n].group, sums[n - 1].group, std::move(can)));
    }
    try {
        validate_complex(tot);
    } catch (const NotAComplex&) {
        throw SignIncoherent("total differential does not square to zero");
    }
    return tot;
}

SpectralPages ss_pages(const DoubleComplexFG& D) {
    validate_double_complex(D);
    const size_t na = D.entry.size();
    size_t nb = 0;
    for (const auto& col : D.entry) nb = std::max(nb, col.size());

    // Column complexes and their vertical homology.
    std::vector<FGComplex> cols(na);
    std::vector<HomologyData> hcols(na);
    for (size_t a = 0; a < na; ++a) {
        for (size_t b = 0; b < D.entry[a].size(); ++b)
            cols[a].groups.push_back(D.entry[a][b]);
        for (size_t b = 1; b < D.entry[a].size(); ++b)
            cols[a].diffs.push_back(D.vert[a][b]);
        cols[a] = pad_complex(std::move(cols[a]), nb);
        hcols[a] = homology_detailed(cols[a]);
    }

    SpectralPages out;
    out.e1.assign(na, std::vector<FGAbGroup>(nb));
    for (size_t a = 0; a < na; ++a)
        for (size_t b = 0; b < nb; ++b)
            out.e1[a][b] = hcols[a].canon[b].group;

    // Induced horizontal maps per row, then homology of each row.
    out.e2.assign(na, std::vector<FGAbGroup>(nb));
    for (size_t b = 0; b < nb; ++b) {
        FGComplex row; // indexed by a, increasing
        std::vector<FGMap> row_maps;
        for (size_t a = 0; a < na; ++a) row.groups.push_back(out.e1[a][b]);
        for (size_t a = 1; a < na; ++a) {
            IntMatrix M = (b < D.entry[a].size() && a >= 1)
                              ? D.horiz[a][b].matrix
                              : IntMatrix(cols[a - 1].groups[b].ngens(),
                                          cols[a].groups[b].ngens());
            row.diffs.push_back(
                induced_map_between(hcols[a], b, hcols[a - 1], b, M));
        }
        std::vector<FGAbGroup> H = homology(row);
        for (size_t a = 0; a < na; ++a) out.e2[a][b] = H[a];
    }

    // Degenerate convergence: E2 concentrated in a single row or column.
    std::vector<std::pair<size_t, size_t>> nonzero;
    for (size_t a = 0; a < na; ++a)
        for (size_t b = 0; b < nb; ++b)
            if (!out.e2[a][b].is_trivial()) nonzero.emplace_back(a, b);
    bool one_row = true, one_col = true;
    for (size_t i = 1; i < nonzero.size(); ++i) {
        if (nonzero[i].second != nonzero[0].second) one_row = false;
        if (nonzero[i].first != nonzero[0].first) one_col = false;
    }
    out.degenerate = one_row || one_col;
    if (out.degenerate) {
        FGComplex tot = total_complex(D);
        std::vector<FGAbGroup> Htot = homology(tot);
        for (size_t n = 0; n < Htot.size(); ++n) {
            FGAbGroup expected;
            for (size_t a = 0; a < na; ++a) {
                size_t b = n - a;
                if (a > n || b >= nb) continue;
                if (!out.e2[a][b].is_trivial()) {
                    if (!expected.is_trivial()) { /* more than one term */ }
                    expected = out.e2[a][b];
                }
            }
            if (!(expected == Htot[n])) { out.convergence_ok = false; break; }
        }
    }
    return out;
}

VanishingAudit vanishing_audit(const std::vector<VanishingInput>& results) {
    VanishingAudit audit;
    for (size_t s = 0; s < results.size(); ++s) {
        const auto& r = results[s];
        for (size_t j = 0; j < r.homology.size(); ++j) {
            if (static_cast<int>(j) > r.dim && !r.homology[j].is_trivial())
                audit.out_of_range.push_back({s, static_cast<int>(j)});
        }
        if (r.a1_product) {
            for (const auto& H : r.homology)
                if (!H.is_trivial()) {
                    audit.a1_product_failures.push_back(s);
                    break;
                }
        }
    }
    return audit;
}

} // namespace zetareg
