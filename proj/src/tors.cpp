#include "torslat/tors.hpp"

#include <algorithm>
#include <cassert>

#include "torslat/errors.hpp"

namespace torslat {

int Bitset::count() const {
    int c = 0;
    for (uint64_t x : w_) c += __builtin_popcountll(x);
    return c;
}

bool Bitset::subset_of(const Bitset& o) const {
    for (size_t k = 0; k < w_.size(); ++k)
        if (w_[k] & ~o.w_[k]) return false;
    return true;
}

Bitset Bitset::operator&(const Bitset& o) const {
    Bitset r(n_);
    for (size_t k = 0; k < w_.size(); ++k) r.w_[k] = w_[k] & o.w_[k];
    return r;
}

Bitset Bitset::operator|(const Bitset& o) const {
    Bitset r(n_);
    for (size_t k = 0; k < w_.size(); ++k) r.w_[k] = w_[k] | o.w_[k];
    return r;
}

std::vector<int> Bitset::members() const {
    std::vector<int> m;
    for (int i = 0; i < n_; ++i)
        if (test(i)) m.push_back(i);
    return m;
}

// membership in the smallest torsion class containing S: peel off the trace
// of S until nothing is left, failing when a nonzero layer has zero trace
bool Lattice::in_closure(const std::vector<int>& S, Rep X) const {
    const Algebra& A = *alg_;
    while (!X.is_zero()) {
        SubmoduleWitness tr = trace_submodule(A, S, X);
        int d = tr.total_dim();
        if (d == 0) return false;
        if (d == X.total_dim()) return true;
        X = quotient_rep(A, X, tr).rep;
    }
    return true;
}

// dual test for the smallest torsionfree class cogenerated by S
bool Lattice::in_coclosure(const std::vector<int>& S, Rep X) const {
    const Algebra& A = *alg_;
    while (!X.is_zero()) {
        SubmoduleWitness rj = reject_submodule(A, S, X);
        int d = rj.total_dim();
        if (d == X.total_dim()) return false;  // no progress: X maps nowhere into S
        if (d == 0) return true;
        X = sub_rep(A, X, rj);
    }
    return true;
}

Bitset Lattice::torsion_closure(const Bitset& S) const {
    std::vector<int> gens = S.members();
    Bitset out(alg_->n_ground());
    for (int i = 0; i < alg_->n_ground(); ++i)
        if (in_closure(gens, alg_->ground[i])) out.set(i);
    return out;
}

Bitset Lattice::cotorsion_closure(const Bitset& S) const {
    std::vector<int> gens = S.members();
    Bitset out(alg_->n_ground());
    for (int i = 0; i < alg_->n_ground(); ++i)
        if (in_coclosure(gens, alg_->ground[i])) out.set(i);
    return out;
}

Bitset Lattice::torsionfree_of_members(const Bitset& t) const {
    const Algebra& A = *alg_;
    Bitset out(A.n_ground());
    std::vector<int> tm = t.members();
    for (int x = 0; x < A.n_ground(); ++x) {
        bool ok = true;
        for (int m : tm)
            if (A.hom_dim_ground(m, x) > 0) { ok = false; break; }
        if (ok) out.set(x);
    }
    return out;
}

Lattice::Lattice(const Algebra& A) : alg_(&A) {
    int m = A.n_ground();
    // next-closure over the closure operator, lectic order on ground indices
    Bitset cur = torsion_closure(Bitset(m));
    classes_.push_back(cur);
    for (;;) {
        bool found = false;
        for (int i = m - 1; i >= 0 && !found; --i) {
            if (cur.test(i)) continue;
            Bitset seed(m);
            for (int j = 0; j < i; ++j)
                if (cur.test(j)) seed.set(j);
            seed.set(i);
            Bitset cl = torsion_closure(seed);
            bool lectic = true;
            for (int j = 0; j < i; ++j)
                if (cl.test(j) && !cur.test(j)) { lectic = false; break; }
            if (lectic) {
                cur = cl;
                classes_.push_back(cur);
                found = true;
            }
        }
        if (!found) break;
    }
    tf_.reserve(classes_.size());
    for (const Bitset& t : classes_) tf_.push_back(torsionfree_of_members(t));

    // covering pairs, then labels
    int N = (int)classes_.size();
    for (int t = 0; t < N; ++t)
        for (int u = 0; u < N; ++u) {
            if (t == u) continue;
            if (!classes_[u].subset_of(classes_[t])) continue;
            bool cover = true;
            for (int w = 0; w < N && cover; ++w) {
                if (w == t || w == u) continue;
                if (classes_[u].subset_of(classes_[w]) && classes_[w].subset_of(classes_[t]) &&
                    classes_[w] != classes_[u] && classes_[w] != classes_[t])
                    cover = false;
            }
            if (cover) arrows_.push_back(HasseArrow{t, u, -1});
        }
    std::sort(arrows_.begin(), arrows_.end(), [](const HasseArrow& a, const HasseArrow& b) {
        return a.upper != b.upper ? a.upper < b.upper : a.lower < b.lower;
    });
    for (auto& ar : arrows_) ar.label = label_of_cover(ar.upper, ar.lower);
}

int Lattice::index_of(const Bitset& b) const {
    for (int i = 0; i < n_classes(); ++i)
        if (classes_[i] == b) return i;
    return -1;
}

// the label is the unique simple object of the wide subcategory t cap v(u)
int Lattice::label_of_cover(int t, int u) const {
    const Algebra& A = *alg_;
    Bitset W = classes_[t] & tf_[u];
    std::vector<int> candidates;
    for (int x : W.members()) {
        bool simple_in_w = true;
        for (const SubmoduleWitness& w : A.submodules_ground(x)) {
            int d = w.total_dim();
            if (d == 0 || d == A.ground[x].total_dim()) continue;
            Rep U = sub_rep(A, A.ground[x], w);
            bool in_w = true;
            for (int piece : decompose(A, U))
                if (!W.test(piece)) { in_w = false; break; }
            if (in_w) { simple_in_w = false; break; }
        }
        if (simple_in_w) candidates.push_back(x);
    }
    if (candidates.size() != 1)
        throw TheoremViolation("cover-label-uniqueness",
                               "found " + std::to_string(candidates.size()) +
                                   " simple objects in t&v for cover " + std::to_string(t) + "->" +
                                   std::to_string(u));
    if (!A.is_brick(candidates[0]))
        throw TheoremViolation("cover-label-brick",
                               "label '" + A.ground[candidates[0]].name + "' is not a brick");
    return candidates[0];
}

Bitset Lattice::meet(const std::vector<Bitset>& ts) const {
    Bitset r(alg_->n_ground());
    if (ts.empty()) {
        for (int i = 0; i < alg_->n_ground(); ++i) r.set(i);
        return r;
    }
    r = ts[0];
    for (size_t k = 1; k < ts.size(); ++k) r = r & ts[k];
    assert(torsion_closure(r) == r && "meet of torsion classes must be closed");
    return r;
}

Bitset Lattice::join(const std::vector<Bitset>& ts) const {
    Bitset r(alg_->n_ground());
    for (auto& t : ts) r = r | t;
    return torsion_closure(r);
}

std::vector<int> Lattice::tf_almost_torsion(int id) const {
    std::vector<int> out;
    for (const HasseArrow& a : arrows_)
        if (a.lower == id) out.push_back(a.label);
    return out;
}

std::vector<int> Lattice::torsion_almost_torsionfree(int id) const {
    std::vector<int> out;
    for (const HasseArrow& a : arrows_)
        if (a.upper == id) out.push_back(a.label);
    return out;
}

bool Lattice::filt_membership(const std::vector<int>& brick_set, const Rep& M) const {
    const Algebra& A = *alg_;
    if (M.is_zero()) return true;
    for (const SubmoduleWitness& w : submodules(A, M)) {
        if (w.total_dim() == 0) continue;
        Rep U = sub_rep(A, M, w);
        bool matches = false;
        for (int b : brick_set)
            if (U.dims == A.ground[b].dims && is_isomorphic(A, U, A.ground[b])) {
                matches = true;
                break;
            }
        if (!matches) continue;
        if (filt_membership(brick_set, quotient_rep(A, M, w).rep)) return true;
    }
    return false;
}

std::optional<std::vector<int>> Lattice::wide_interval_check(int u, int t) const {
    const Algebra& A = *alg_;
    if (!classes_[u].subset_of(classes_[t]))
        throw InputError("wide_interval_check needs u <= t");
    Bitset W = classes_[t] & tf_[u];
    std::vector<int> semibrick;
    for (const HasseArrow& a : arrows_)
        if (a.lower == u && classes_[t].test(a.label)) semibrick.push_back(a.label);
    std::sort(semibrick.begin(), semibrick.end());
    for (int b : semibrick)
        if (!W.test(b)) return std::nullopt;
    for (int x : W.members())
        if (!filt_membership(semibrick, A.ground[x])) return std::nullopt;
    return semibrick;
}

std::vector<int> Lattice::cmi_classes() const {
    std::vector<int> out;
    for (int id = 0; id < n_classes(); ++id) {
        int covers_above = 0;
        for (const HasseArrow& a : arrows_)
            if (a.lower == id) ++covers_above;
        if (covers_above == 1) out.push_back(id);
    }
    return out;
}

int Lattice::brick_of_cmi(int id) const {
    const Algebra& A = *alg_;
    std::vector<int> above = tf_almost_torsion(id);
    if (above.size() != 1)
        throw InputError("class " + std::to_string(id) + " is not completely meet irreducible");
    int b = above[0];
    // the class must be exactly { X : Hom(X, B) = 0 }
    Bitset cog(A.n_ground());
    for (int x = 0; x < A.n_ground(); ++x)
        if (A.hom_dim_ground(x, b) == 0) cog.set(x);
    if (!(cog == classes_[id]))
        throw TheoremViolation("cmi-cogenerated-form",
                               "class " + std::to_string(id) + " is not cogenerated by its brick '" +
                                   A.ground[b].name + "'");
    return b;
}

long long Lattice::theta_of(const std::vector<long long>& theta, const Rep& M) const {
    const Algebra& A = *alg_;
    long long v = 0;
    for (int w = 0; w < A.n_vertices(); ++w) {
        if (theta[w] == 0) continue;
        int d = (int)hom_basis(A, M, A.ground[A.inj_of_vertex[w]]).size();
        v += theta[w] * d;
    }
    return v;
}

SemistableRecord Lattice::semistable_pairs(const std::vector<long long>& theta) const {
    const Algebra& A = *alg_;
    if ((int)theta.size() != A.n_vertices())
        throw InputError("theta needs one integer per vertex");
    SemistableRecord rec;
    rec.theta = theta;
    rec.t_strict = Bitset(A.n_ground());
    rec.t_bar = Bitset(A.n_ground());
    rec.f_strict = Bitset(A.n_ground());
    rec.f_bar = Bitset(A.n_ground());
    for (int g = 0; g < A.n_ground(); ++g) {
        const Rep& M = A.ground[g];
        bool tb = true, ts = true, fb = true, fs = true;
        for (const SubmoduleWitness& w : A.submodules_ground(g)) {
            int d = w.total_dim();
            if (d < M.total_dim()) {  // proper submodule: nonzero quotient
                long long v = theta_of(theta, quotient_rep(A, M, w).rep);
                if (v > 0) tb = false;
                if (v >= 0) ts = false;
            }
            if (d > 0) {  // nonzero submodule
                long long v = theta_of(theta, sub_rep(A, M, w));
                if (v < 0) fb = false;
                if (v <= 0) fs = false;
            }
        }
        if (tb) rec.t_bar.set(g);
        if (ts) rec.t_strict.set(g);
        if (fb) rec.f_bar.set(g);
        if (fs) rec.f_strict.set(g);
    }
    // second pass over quotients with the dimension-vector pairing
    for (int g = 0; g < A.n_ground(); ++g) {
        const Rep& M = A.ground[g];
        bool tb = true;
        for (const Rep& Q : quotients(A, M)) {
            if (Q.is_zero()) continue;
            long long v = 0;
            for (int w = 0; w < A.n_vertices(); ++w) v += theta[w] * Q.dims[w];
            if (v > 0) tb = false;
        }
        if (tb != rec.t_bar.test(g))
            throw TheoremViolation("semistable-second-pass",
                                   "quotient scans disagree on '" + A.ground[g].name + "'");
    }
    int lo = index_of(rec.t_strict), hi = index_of(rec.t_bar);
    if (lo < 0 || hi < 0)
        throw TheoremViolation("semistable-torsion-class",
                               "a semistable class is not a torsion class");
    if (!(torsionfree(hi) == rec.f_strict) || !(torsionfree(lo) == rec.f_bar))
        throw TheoremViolation("semistable-pair",
                               "torsionfree companions do not match the hom-orthogonal classes");
    auto sb = wide_interval_check(lo, hi);
    if (!sb)
        throw TheoremViolation("semistable-wide-interval",
                               "[t_strict, t_bar] failed the wide interval check");
    rec.lower_id = lo;
    rec.upper_id = hi;
    rec.semibrick = *sb;
    rec.semistable = rec.t_bar & rec.f_bar;
    return rec;
}

}  // namespace torslat
