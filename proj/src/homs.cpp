#include <algorithm>
#include <cassert>
#include <stdexcept>

#include "torslat/errors.hpp"
#include "torslat/quiver.hpp"

namespace torslat {

// Intertwiner space: unknowns are the entries of one matrix per vertex, one
// linear constraint block per arrow, solved exactly over F_p.
std::vector<Morphism> hom_basis(const Algebra& A, const Rep& M, const Rep& N) {
    int nv = A.n_vertices();
    uint32_t p = A.prime();
    std::vector<int> off(nv + 1, 0);
    for (int v = 0; v < nv; ++v) off[v + 1] = off[v] + N.dims[v] * M.dims[v];
    int total = off[nv];
    if (total == 0) return {};

    int rows = 0;
    for (int a = 0; a < A.n_arrows(); ++a)
        rows += N.dims[A.arrows[a].to] * M.dims[A.arrows[a].from];
    FpMatrix K(rows, total, p);
    int r0 = 0;
    for (int a = 0; a < A.n_arrows(); ++a) {
        int s = A.arrows[a].from, t = A.arrows[a].to;
        // (f_t M_a - N_a f_s)[r][c] = 0
        for (int r = 0; r < N.dims[t]; ++r)
            for (int c = 0; c < M.dims[s]; ++c) {
                int row = r0 + r * M.dims[s] + c;
                for (int cp = 0; cp < M.dims[t]; ++cp) {
                    uint32_t coef = M.action[a](cp, c);
                    if (!coef) continue;
                    int col = off[t] + r * M.dims[t] + cp;
                    K.set(row, col, (K(row, col) + coef) % p);
                }
                for (int rp = 0; rp < N.dims[s]; ++rp) {
                    uint32_t coef = N.action[a](r, rp);
                    if (!coef) continue;
                    int col = off[s] + rp * M.dims[s] + c;
                    K.set(row, col, (K(row, col) + p - coef) % p);
                }
            }
        r0 += N.dims[t] * M.dims[s];
    }
    std::vector<Morphism> basis;
    for (const FpVec& v : K.kernel_basis()) {
        Morphism f;
        for (int w = 0; w < nv; ++w) {
            FpMatrix m(N.dims[w], M.dims[w], p);
            for (int i = 0; i < m.rows(); ++i)
                for (int j = 0; j < m.cols(); ++j) m.set(i, j, v[off[w] + i * M.dims[w] + j]);
            f.mats.push_back(std::move(m));
        }
        assert(is_module_map(A, M, N, f));
        basis.push_back(std::move(f));
    }
    return basis;
}

ProjCover projective_cover(const Algebra& A, const Rep& M) {
    uint32_t p = A.prime();
    ProjCover pc;
    pc.source = zero_rep(A);
    std::vector<FpMatrix> gmats;
    for (int v = 0; v < A.n_vertices(); ++v)
        gmats.push_back(FpMatrix(M.dims[v], 0, p));
    for (int v = 0; v < A.n_vertices(); ++v) {
        if (M.dims[v] == 0) continue;
        // rad(M) at v is the sum of incoming arrow images; lift a basis of the top
        std::vector<FpMatrix> imgs;
        for (int a = 0; a < A.n_arrows(); ++a)
            if (A.arrows[a].to == v && M.action[a].cols() > 0) imgs.push_back(M.action[a]);
        FpMatrix rad = imgs.empty() ? FpMatrix(M.dims[v], 0, p) : hstack(imgs).column_space();
        // standard vectors completing rad to the full space, chosen greedily
        std::vector<FpVec> tops;
        FpMatrix span = rad;
        for (int i = 0; i < M.dims[v] && span.cols() < M.dims[v]; ++i) {
            FpVec e(M.dims[v], 0);
            e[i] = 1;
            FpMatrix cand = hstack({span, matrix_from_columns({e}, M.dims[v], p)});
            if (cand.rank() > span.rank()) {
                tops.push_back(e);
                span = cand.column_space();
            }
        }
        for (const FpVec& m0 : tops) {
            // phi : P(v) -> M, generator at v goes to m0, a basis path q acts by M_q
            const Rep& P = A.path_projectives[v];
            Morphism phi;
            std::vector<std::vector<FpVec>> cols(A.n_vertices());
            int idx = 0;
            for (int w = 0; w < A.n_vertices(); ++w)
                for (int k = 0; k < P.dims[w]; ++k) {
                    const Path& q = A.proj_basis_paths[v][idx++];
                    assert(q.to == w);
                    cols[w].push_back(path_action(A, M, q).apply(m0));
                }
            pc.source = direct_sum_rep(A, pc.source, P);
            for (int w = 0; w < A.n_vertices(); ++w) {
                FpMatrix block = matrix_from_columns(cols[w], M.dims[w], p);
                gmats[w] = hstack({gmats[w], block});
            }
        }
    }
    pc.g.mats = gmats;
    assert(is_module_map(A, pc.source, M, pc.g));
    if (!surjective_vertexwise(pc.g))
        throw std::logic_error("projective cover is not surjective");
    return pc;
}

int ext1_dim(const Algebra& A, const Rep& M, const Rep& N) {
    if (M.is_zero() || N.is_zero()) return 0;
    // 0 -> Omega -> P0 -> M -> 0 with P0 projective gives
    // Ext^1(M, N) = coker(Hom(P0, N) -> Hom(Omega, N))
    ProjCover pc = projective_cover(A, M);
    SubmoduleWitness kw = kernel_witness(A, pc.source, pc.g);
    if (kw.total_dim() == 0) return 0;
    Rep Omega = sub_rep(A, pc.source, kw);
    Morphism incl;
    incl.mats = kw.basis;
    auto homs = hom_basis(A, Omega, N);
    if (homs.empty()) return 0;
    std::vector<FpVec> restricted;
    for (const Morphism& h : hom_basis(A, pc.source, N)) restricted.push_back(vec_of(compose(h, incl)));
    int rows = (int)vec_of(homs[0]).size();
    FpMatrix span = matrix_from_columns(restricted, rows, A.prime());
    return (int)homs.size() - span.rank();
}

bool is_indecomposable(const Algebra& A, const Rep& M) {
    if (M.is_zero()) return false;
    auto endos = hom_basis(A, M, M);
    if (endos.size() == 1) return true;
    long long combos = 1;
    for (size_t k = 0; k < endos.size(); ++k) {
        combos *= A.prime();
        if (combos > A.caps.hom_scan_cap)
            throw ResourceError("endomorphism scan of '" + M.name + "' exceeds hom_scan_cap = " +
                                std::to_string(A.caps.hom_scan_cap));
    }
    Morphism id = identity_morphism(A, M);
    std::vector<uint32_t> c(endos.size(), 0);
    for (long long it = 1; it < combos; ++it) {
        int k = 0;
        while (true) {
            c[k] = (c[k] + 1) % A.prime();
            if (c[k]) break;
            ++k;
        }
        Morphism e = zero_morphism(A, M, M);
        for (size_t j = 0; j < endos.size(); ++j)
            if (c[j])
                for (size_t v = 0; v < e.mats.size(); ++v)
                    e.mats[v] = e.mats[v].add(endos[j].mats[v].scaled(c[j]));
        bool is_id = true, idem = true;
        for (size_t v = 0; v < e.mats.size() && idem; ++v) {
            if (!(e.mats[v].mul(e.mats[v]) == e.mats[v])) idem = false;
            if (!(e.mats[v] == id.mats[v])) is_id = false;
        }
        if (idem && !is_id) return false;  // proper idempotent found
    }
    return true;
}

bool is_isomorphic(const Algebra& A, const Rep& M, const Rep& N) {
    if (M.dims != N.dims) return false;
    if (M.is_zero()) return true;
    auto homs = hom_basis(A, M, N);
    if (homs.empty()) return false;
    long long combos = 1;
    bool scan = true;
    for (size_t k = 0; k < homs.size(); ++k) {
        combos *= A.prime();
        if (combos > A.caps.hom_scan_cap) { scan = false; break; }
    }
    if (scan) {
        std::vector<uint32_t> c(homs.size(), 0);
        for (long long it = 1; it < combos; ++it) {
            int k = 0;
            while (true) {
                c[k] = (c[k] + 1) % A.prime();
                if (c[k]) break;
                ++k;
            }
            Morphism f = zero_morphism(A, M, N);
            for (size_t j = 0; j < homs.size(); ++j)
                if (c[j])
                    for (size_t v = 0; v < f.mats.size(); ++v)
                        f.mats[v] = f.mats[v].add(homs[j].mats[v].scaled(c[j]));
            if (invertible_vertexwise(f)) return true;
        }
        return false;
    }
    return decompose(A, M) == decompose(A, N);
}

namespace {

// Split off one ground copy: returns the ground index, the section s and the
// retraction r with r*s = id, or -1 when no ground element is a summand.
struct Peel {
    int g = -1;
    Morphism s, r;
};

Peel peel_one(const Algebra& A, const Rep& R) {
    for (int g = 0; g < A.n_ground(); ++g) {
        const Rep& G = A.ground[g];
        bool fits = true;
        for (int v = 0; v < A.n_vertices(); ++v)
            if (G.dims[v] > R.dims[v]) { fits = false; break; }
        if (!fits) continue;
        auto into = hom_basis(A, G, R);
        if (into.empty()) continue;
        auto back = hom_basis(A, R, G);
        // End(G) is local, so a basis pair with invertible composite exists
        // exactly when G is a direct summand of R
        for (const Morphism& r0 : back)
            for (const Morphism& s0 : into) {
                Morphism u = compose(r0, s0);
                if (invertible_vertexwise(u)) {
                    Peel out;
                    out.g = g;
                    out.s = s0;
                    out.r = compose(inverse_vertexwise(u), r0);
                    return out;
                }
            }
    }
    return {};
}

}  // namespace

std::vector<int> decompose(const Algebra& A, const Rep& M) {
    std::vector<int> res;
    Rep R = M;
    while (!R.is_zero()) {
        Peel pl = peel_one(A, R);
        if (pl.g < 0)
            throw CompletenessError(
                "ground set is not closed under the requested construction (unmatched summand of "
                "total dimension " +
                std::to_string(R.total_dim()) + ")");
        res.push_back(pl.g);
        Morphism e = compose(pl.s, pl.r);  // idempotent with image one ground copy
        SubmoduleWitness kw = kernel_witness(A, R, e);
        R = sub_rep(A, R, kw);
    }
    std::sort(res.begin(), res.end());
    return res;
}

DecompMaps decompose_with_maps(const Algebra& A, const Rep& M) {
    DecompMaps dm;
    Rep R = M;
    Morphism cur_incl = identity_morphism(A, M);
    Morphism cur_proj = identity_morphism(A, M);
    while (!R.is_zero()) {
        Peel pl = peel_one(A, R);
        if (pl.g < 0)
            throw CompletenessError(
                "ground set is not closed under the requested construction (unmatched summand)");
        Morphism e = compose(pl.s, pl.r);
        SubmoduleWitness kw = kernel_witness(A, R, e);
        // invertible change of basis [s | ker e] on R splits off the copy
        Morphism pi_g, pi_k;
        for (int v = 0; v < A.n_vertices(); ++v) {
            FpMatrix T = hstack({pl.s.mats[v], kw.basis[v]});
            auto Ti = T.inverse();
            if (!Ti) throw std::logic_error("summand splitting is not a basis");
            int gdim = pl.s.mats[v].cols();
            pi_g.mats.push_back(Ti->rows_slice(0, gdim));
            pi_k.mats.push_back(Ti->rows_slice(gdim, Ti->rows()));
        }
        dm.parts.push_back(pl.g);
        dm.incl.push_back(compose(cur_incl, pl.s));
        dm.proj.push_back(compose(pi_g, cur_proj));
        Rep K = sub_rep(A, R, kw);
        Morphism kin;
        kin.mats = kw.basis;
        cur_incl = compose(cur_incl, kin);
        cur_proj = compose(pi_k, cur_proj);
        R = K;
    }
    return dm;
}

}  // namespace torslat
