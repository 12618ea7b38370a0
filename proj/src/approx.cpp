#include <algorithm>
#include <cassert>
#include <map>
#include <stdexcept>
#include <string>

#include "torslat/errors.hpp"
#include "torslat/quiver.hpp"

namespace torslat {

SubmoduleWitness full_witness(const Algebra& A, const Rep& M) {
    SubmoduleWitness w;
    for (int v = 0; v < A.n_vertices(); ++v)
        w.basis.push_back(FpMatrix::identity(M.dims[v], A.prime()));
    return w;
}

SubmoduleWitness image_witness(const Algebra& A, const Rep&, const Morphism& f) {
    SubmoduleWitness w;
    for (int v = 0; v < A.n_vertices(); ++v) w.basis.push_back(f.mats[v].column_space());
    return w;
}

SubmoduleWitness kernel_witness(const Algebra& A, const Rep& src, const Morphism& f) {
    SubmoduleWitness w;
    for (int v = 0; v < A.n_vertices(); ++v) {
        auto ker = f.mats[v].kernel_basis();
        w.basis.push_back(matrix_from_columns(ker, src.dims[v], A.prime()));
    }
    return w;
}

bool witness_contains(const SubmoduleWitness& big, const SubmoduleWitness& small) {
    for (size_t v = 0; v < big.basis.size(); ++v)
        if (!big.basis[v].solve_matrix(small.basis[v])) return false;
    return true;
}

Rep sub_rep(const Algebra& A, const Rep& M, const SubmoduleWitness& w) {
    Rep r = zero_rep(A);
    for (int v = 0; v < A.n_vertices(); ++v) r.dims[v] = w.basis[v].cols();
    for (int a = 0; a < A.n_arrows(); ++a) {
        int s = A.arrows[a].from, t = A.arrows[a].to;
        auto x = w.basis[t].solve_matrix(M.action[a].mul(w.basis[s]));
        if (!x) throw std::logic_error("submodule witness is not arrow invariant");
        r.action[a] = *x;
    }
    return r;
}

Quotient quotient_rep(const Algebra& A, const Rep& M, const SubmoduleWitness& w) {
    uint32_t p = A.prime();
    Quotient q;
    q.rep = zero_rep(A);
    std::vector<FpMatrix> lift;  // section of the projection, per vertex
    for (int v = 0; v < A.n_vertices(); ++v) {
        FpMatrix U = w.basis[v].column_space();
        // pivot rows of U are covered by the subspace; the complementary
        // standard vectors give quotient coordinates
        std::vector<bool> pivotal(M.dims[v], false);
        {
            FpMatrix Ut = U.transpose();
            // reduced echelon rows of U^T have their leading entries in the
            // pivotal coordinates
            for (int i = 0; i < Ut.rows(); ++i)
                for (int j = 0; j < Ut.cols(); ++j)
                    if (Ut(i, j)) { pivotal[j] = true; break; }
        }
        std::vector<FpVec> comp;
        for (int j = 0; j < M.dims[v]; ++j) {
            if (pivotal[j]) continue;
            FpVec e(M.dims[v], 0);
            e[j] = 1;
            comp.push_back(e);
        }
        FpMatrix C = matrix_from_columns(comp, M.dims[v], p);
        FpMatrix B = hstack({U, C});
        auto Bi = B.inverse();
        if (!Bi) throw std::logic_error("quotient basis completion failed");
        q.rep.dims[v] = C.cols();
        q.proj.mats.push_back(Bi->rows_slice(U.cols(), B.rows()));
        lift.push_back(C);
    }
    for (int a = 0; a < A.n_arrows(); ++a) {
        int s = A.arrows[a].from, t = A.arrows[a].to;
        q.rep.action[a] = q.proj.mats[t].mul(M.action[a].mul(lift[s]));
    }
    assert(is_module_map(A, M, q.rep, q.proj));
    return q;
}

namespace {

std::string witness_key(const SubmoduleWitness& w) {
    std::string k;
    for (auto& b : w.basis) {
        k += '|';
        k += std::to_string(b.cols());
        for (int i = 0; i < b.rows(); ++i)
            for (int j = 0; j < b.cols(); ++j) {
                k += ',';
                k += std::to_string(b(i, j));
            }
    }
    return k;
}

SubmoduleWitness canonical_span(const Algebra& A, const Rep& M,
                                std::vector<FpMatrix> gens) {
    // close the span under the arrow actions, then canonicalize
    uint32_t p = A.prime();
    std::vector<FpMatrix> span;
    for (int v = 0; v < A.n_vertices(); ++v)
        span.push_back(gens[v].cols() ? gens[v].column_space() : FpMatrix(M.dims[v], 0, p));
    bool grew = true;
    while (grew) {
        grew = false;
        for (int a = 0; a < A.n_arrows(); ++a) {
            int s = A.arrows[a].from, t = A.arrows[a].to;
            if (span[s].cols() == 0) continue;
            FpMatrix joined = hstack({span[t], M.action[a].mul(span[s])}).column_space();
            if (joined.cols() > span[t].cols()) {
                span[t] = joined;
                grew = true;
            }
        }
    }
    SubmoduleWitness w;
    w.basis = span;
    return w;
}

}  // namespace

std::vector<SubmoduleWitness> submodules(const Algebra& A, const Rep& M) {
    int D = M.total_dim();
    if (D > A.caps.dim_cap)
        throw ResourceError("submodule enumeration needs total dim <= dim_cap = " +
                            std::to_string(A.caps.dim_cap) + ", got " + std::to_string(D));
    uint32_t p = A.prime();
    std::map<std::string, SubmoduleWitness> found;
    {
        SubmoduleWitness zero;
        for (int v = 0; v < A.n_vertices(); ++v) zero.basis.push_back(FpMatrix(M.dims[v], 0, p));
        found.emplace(witness_key(zero), zero);
    }
    // cyclic submodules of all vectors, scanned projectively (first nonzero
    // coordinate = 1)
    std::vector<uint32_t> digits(D, 0);
    long long count = 1;
    for (int i = 0; i < D; ++i) count *= p;
    for (long long it = 1; it < count; ++it) {
        int k = 0;
        while (true) {
            digits[k] = (digits[k] + 1) % p;
            if (digits[k]) break;
            ++k;
        }
        int first = 0;
        while (digits[first] == 0) ++first;
        if (digits[first] != 1) continue;
        std::vector<FpMatrix> gens;
        int off = 0;
        for (int v = 0; v < A.n_vertices(); ++v) {
            FpVec comp(digits.begin() + off, digits.begin() + off + M.dims[v]);
            off += M.dims[v];
            bool nz = false;
            for (uint32_t x : comp)
                if (x) nz = true;
            gens.push_back(nz ? matrix_from_columns({comp}, M.dims[v], p)
                              : FpMatrix(M.dims[v], 0, p));
        }
        SubmoduleWitness w = canonical_span(A, M, gens);
        found.emplace(witness_key(w), w);
    }
    // close under pairwise sums
    std::vector<SubmoduleWitness> work;
    for (auto& [k, w] : found) work.push_back(w);
    for (size_t i = 0; i < work.size(); ++i)
        for (size_t j = 0; j < i; ++j) {
            std::vector<FpMatrix> gens;
            for (int v = 0; v < A.n_vertices(); ++v)
                gens.push_back(hstack({work[i].basis[v], work[j].basis[v]}));
            SubmoduleWitness w = canonical_span(A, M, gens);
            auto [it2, inserted] = found.emplace(witness_key(w), w);
            if (inserted) work.push_back(w);
        }
    std::vector<SubmoduleWitness> out;
    for (auto& [k, w] : found) out.push_back(w);
    std::stable_sort(out.begin(), out.end(),
                     [](const SubmoduleWitness& a, const SubmoduleWitness& b) {
                         return a.total_dim() < b.total_dim();
                     });
    return out;
}

std::vector<Rep> quotients(const Algebra& A, const Rep& M) {
    std::vector<Rep> out;
    for (const auto& w : submodules(A, M)) out.push_back(quotient_rep(A, M, w).rep);
    return out;
}

SubmoduleWitness trace_submodule(const Algebra& A, const std::vector<int>& S, const Rep& M) {
    uint32_t p = A.prime();
    std::vector<FpMatrix> gens;
    for (int v = 0; v < A.n_vertices(); ++v) gens.push_back(FpMatrix(M.dims[v], 0, p));
    for (int s : S)
        for (const Morphism& h : hom_basis(A, A.ground[s], M))
            for (int v = 0; v < A.n_vertices(); ++v)
                gens[v] = hstack({gens[v], h.mats[v]});
    SubmoduleWitness w;
    for (int v = 0; v < A.n_vertices(); ++v) w.basis.push_back(gens[v].column_space());
    return w;  // a sum of images of module maps is already arrow invariant
}

SubmoduleWitness reject_submodule(const Algebra& A, const std::vector<int>& S, const Rep& M) {
    // intersection of kernels of all maps into the class
    uint32_t p = A.prime();
    std::vector<FpMatrix> stacked;
    for (int v = 0; v < A.n_vertices(); ++v) stacked.push_back(FpMatrix(0, M.dims[v], p));
    for (int s : S)
        for (const Morphism& h : hom_basis(A, M, A.ground[s]))
            for (int v = 0; v < A.n_vertices(); ++v)
                stacked[v] = vstack({stacked[v], h.mats[v]});
    SubmoduleWitness w;
    for (int v = 0; v < A.n_vertices(); ++v)
        w.basis.push_back(matrix_from_columns(stacked[v].kernel_basis(), M.dims[v], p));
    return w;
}

// --- minimal right approximation ---------------------------------------------

namespace {

struct Assembled {
    DirectSum sum;
    Morphism g;
};

Assembled assemble_right(const Algebra& A, const std::vector<int>& parts,
                         const std::vector<Morphism>& comps, const Rep& M) {
    Assembled out;
    out.sum = make_dsum(A, parts);
    for (int v = 0; v < A.n_vertices(); ++v) {
        std::vector<FpMatrix> blocks;
        blocks.push_back(FpMatrix(M.dims[v], 0, A.prime()));
        for (auto& c : comps) blocks.push_back(c.mats[v]);
        out.g.mats.push_back(hstack(blocks));
    }
    return out;
}

// every basis map c -> M must factor through the candidate source
bool right_approx_property(const Algebra& A, const std::vector<int>& C, const Rep& M,
                           const std::vector<int>& parts, const std::vector<Morphism>& comps) {
    for (int c : C) {
        const Rep& G = A.ground[c];
        auto need = hom_basis(A, G, M);
        if (need.empty()) continue;
        std::vector<FpVec> cols;
        for (size_t j = 0; j < parts.size(); ++j)
            for (const Morphism& u : A.hom_ground(c, parts[j]))
                cols.push_back(vec_of(compose(comps[j], u)));
        int rows = (int)vec_of(need[0]).size();
        FpMatrix span = matrix_from_columns(cols, rows, A.prime());
        for (const Morphism& h : need)
            if (!span.solve(vec_of(h))) return false;
    }
    return true;
}

Morphism combine(const Algebra& A, const Rep& src, const Rep& dst,
                 const std::vector<Morphism>& basis, const FpVec& coords) {
    Morphism m = zero_morphism(A, src, dst);
    for (size_t j = 0; j < basis.size(); ++j)
        if (coords[j])
            for (size_t v = 0; v < m.mats.size(); ++v)
                m.mats[v] = m.mats[v].add(basis[j].mats[v].scaled(coords[j]));
    return m;
}

bool is_idempotent(const Morphism& e) {
    for (auto& m : e.mats)
        if (!(m.mul(m) == m)) return false;
    return true;
}

bool is_identity(const Morphism& e) {
    for (auto& m : e.mats)
        if (!(m == FpMatrix::identity(m.rows(), m.prime()))) return false;
    return true;
}

// endomorphisms e of the source with g e = g must all be invertible; a proper
// idempotent among them exhibits a superfluous summand, which we strip
bool idempotent_reduce_right(const Algebra& A, const Rep& M, std::vector<int>& parts,
                             std::vector<Morphism>& comps) {
    Assembled cur = assemble_right(A, parts, comps, M);
    const Rep& X = cur.sum.rep;
    if (X.is_zero()) return false;
    auto endos = hom_basis(A, X, X);
    std::vector<FpVec> gcols;
    for (auto& e : endos) gcols.push_back(vec_of(compose(cur.g, e)));
    FpMatrix mat = matrix_from_columns(gcols, (int)gcols[0].size(), A.prime());
    auto kerco = mat.kernel_basis();
    if (kerco.empty()) return false;
    long long combos = 1;
    for (size_t k = 0; k < kerco.size(); ++k) {
        combos *= A.prime();
        if (combos > A.caps.hom_scan_cap)
            throw ResourceError("minimality idempotent scan exceeds hom_scan_cap");
    }
    Morphism id = identity_morphism(A, X);
    std::vector<uint32_t> cvec(kerco.size(), 0);
    for (long long it = 1; it < combos; ++it) {
        int k = 0;
        while (true) {
            cvec[k] = (cvec[k] + 1) % A.prime();
            if (cvec[k]) break;
            ++k;
        }
        FpVec coords(endos.size(), 0);
        for (size_t j = 0; j < kerco.size(); ++j)
            if (cvec[j])
                for (size_t i = 0; i < coords.size(); ++i)
                    coords[i] = (uint32_t)((coords[i] + (uint64_t)cvec[j] * kerco[j][i]) % A.prime());
        Morphism e = combine(A, X, X, endos, coords);
        for (size_t v = 0; v < e.mats.size(); ++v) e.mats[v] = e.mats[v].add(id.mats[v]);
        if (!is_idempotent(e) || is_identity(e)) continue;
        // restrict to im(e); g kills ker(e) since g(1-e) = 0
        SubmoduleWitness img = image_witness(A, X, e);
        Rep R = sub_rep(A, X, img);
        Morphism incl;
        incl.mats = img.basis;
        DecompMaps dm = decompose_with_maps(A, R);
        parts = dm.parts;
        comps.clear();
        for (size_t i = 0; i < dm.parts.size(); ++i)
            comps.push_back(compose(cur.g, compose(incl, dm.incl[i])));
        return true;
    }
    return false;
}

}  // namespace

RightApprox min_right_approx(const Algebra& A, const std::vector<int>& C, const Rep& M) {
    std::vector<int> parts;
    std::vector<Morphism> comps;
    for (int c : C)
        for (const Morphism& h : hom_basis(A, A.ground[c], M)) {
            parts.push_back(c);
            comps.push_back(h);
        }
    for (;;) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (size_t q = 0; q < parts.size(); ++q) {
                std::vector<int> p2 = parts;
                std::vector<Morphism> c2 = comps;
                p2.erase(p2.begin() + q);
                c2.erase(c2.begin() + q);
                if (right_approx_property(A, C, M, p2, c2)) {
                    parts = std::move(p2);
                    comps = std::move(c2);
                    changed = true;
                    break;
                }
            }
        }
        if (!idempotent_reduce_right(A, M, parts, comps)) break;
    }
    Assembled res = assemble_right(A, parts, comps, M);
    return RightApprox{res.sum, res.g};
}

// --- minimal left approximation ------------------------------------------------

namespace {

Morphism assemble_left(const Algebra& A, const std::vector<Morphism>& comps, const Rep& M) {
    Morphism f;
    for (int v = 0; v < A.n_vertices(); ++v) {
        std::vector<FpMatrix> blocks;
        blocks.push_back(FpMatrix(0, M.dims[v], A.prime()));
        for (auto& c : comps) blocks.push_back(c.mats[v]);
        f.mats.push_back(vstack(blocks));
    }
    return f;
}

bool left_approx_property(const Algebra& A, const Rep& M, const std::vector<int>& C,
                          const std::vector<int>& parts, const std::vector<Morphism>& comps) {
    for (int c : C) {
        const Rep& G = A.ground[c];
        auto need = hom_basis(A, M, G);
        if (need.empty()) continue;
        std::vector<FpVec> cols;
        for (size_t j = 0; j < parts.size(); ++j)
            for (const Morphism& u : A.hom_ground(parts[j], c))
                cols.push_back(vec_of(compose(u, comps[j])));
        int rows = (int)vec_of(need[0]).size();
        FpMatrix span = matrix_from_columns(cols, rows, A.prime());
        for (const Morphism& h : need)
            if (!span.solve(vec_of(h))) return false;
    }
    return true;
}

// dual of idempotent_reduce_right: e with e f = f and e a proper idempotent
// lets us corestrict the target to im(e)
bool idempotent_reduce_left(const Algebra& A, const Rep& M, std::vector<int>& parts,
                            std::vector<Morphism>& comps) {
    DirectSum sum = make_dsum(A, parts);
    Morphism f = assemble_left(A, comps, M);
    const Rep& Y = sum.rep;
    if (Y.is_zero()) return false;
    auto endos = hom_basis(A, Y, Y);
    std::vector<FpVec> cols;
    for (auto& e : endos) cols.push_back(vec_of(compose(e, f)));
    FpMatrix mat = matrix_from_columns(cols, (int)cols[0].size(), A.prime());
    auto kerco = mat.kernel_basis();
    if (kerco.empty()) return false;
    long long combos = 1;
    for (size_t k = 0; k < kerco.size(); ++k) {
        combos *= A.prime();
        if (combos > A.caps.hom_scan_cap)
            throw ResourceError("minimality idempotent scan exceeds hom_scan_cap");
    }
    Morphism id = identity_morphism(A, Y);
    std::vector<uint32_t> cvec(kerco.size(), 0);
    for (long long it = 1; it < combos; ++it) {
        int k = 0;
        while (true) {
            cvec[k] = (cvec[k] + 1) % A.prime();
            if (cvec[k]) break;
            ++k;
        }
        FpVec coords(endos.size(), 0);
        for (size_t j = 0; j < kerco.size(); ++j)
            if (cvec[j])
                for (size_t i = 0; i < coords.size(); ++i)
                    coords[i] = (uint32_t)((coords[i] + (uint64_t)cvec[j] * kerco[j][i]) % A.prime());
        Morphism e = combine(A, Y, Y, endos, coords);
        for (size_t v = 0; v < e.mats.size(); ++v) e.mats[v] = e.mats[v].add(id.mats[v]);
        if (!is_idempotent(e) || is_identity(e)) continue;
        SubmoduleWitness img = image_witness(A, Y, e);
        Rep R = sub_rep(A, Y, img);
        // corestriction pi with e = incl . pi
        Morphism pi;
        for (int v = 0; v < A.n_vertices(); ++v) {
            auto x = img.basis[v].solve_matrix(e.mats[v]);
            if (!x) throw std::logic_error("idempotent image is not spanned by its witness");
            pi.mats.push_back(*x);
        }
        DecompMaps dm = decompose_with_maps(A, R);
        parts = dm.parts;
        comps.clear();
        for (size_t i = 0; i < dm.parts.size(); ++i)
            comps.push_back(compose(dm.proj[i], compose(pi, f)));
        return true;
    }
    return false;
}

}  // namespace

LeftApprox min_left_approx(const Algebra& A, const Rep& M, const std::vector<int>& C) {
    std::vector<int> parts;
    std::vector<Morphism> comps;
    for (int c : C)
        for (const Morphism& h : hom_basis(A, M, A.ground[c])) {
            parts.push_back(c);
            comps.push_back(h);
        }
    for (;;) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (size_t q = 0; q < parts.size(); ++q) {
                std::vector<int> p2 = parts;
                std::vector<Morphism> c2 = comps;
                p2.erase(p2.begin() + q);
                c2.erase(c2.begin() + q);
                if (left_approx_property(A, M, C, p2, c2)) {
                    parts = std::move(p2);
                    comps = std::move(c2);
                    changed = true;
                    break;
                }
            }
        }
        if (!idempotent_reduce_left(A, M, parts, comps)) break;
    }
    LeftApprox out;
    out.target = make_dsum(A, parts);
    out.f = assemble_left(A, comps, M);
    return out;
}

Copres injective_copresentation(const Algebra& A, const Rep& M) {
    Copres cp;
    std::vector<int> inj = A.injective_ground_ids();
    LeftApprox env = min_left_approx(A, M, inj);
    if (!injective_on(M, env.f))
        throw std::logic_error("injective envelope is not a monomorphism");
    cp.i0 = env.target;
    cp.embed = env.f;
    SubmoduleWitness img = image_witness(A, cp.i0.rep, env.f);
    Quotient q = quotient_rep(A, cp.i0.rep, img);
    if (q.rep.is_zero()) {
        cp.i1 = make_dsum(A, {});
        cp.d = zero_morphism(A, cp.i0.rep, cp.i1.rep);
        return cp;
    }
    LeftApprox env1 = min_left_approx(A, q.rep, inj);
    if (!injective_on(q.rep, env1.f))
        throw std::logic_error("cosyzygy envelope is not a monomorphism");
    cp.i1 = env1.target;
    cp.d = compose(env1.f, q.proj);
    return cp;
}

}  // namespace torslat
