#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "torslat/fp.hpp"

namespace torslat {

struct Caps {
    uint32_t prime = 5;
    int dim_cap = 8;                  // total-dimension bound for submodule scans
    long long hom_scan_cap = 78125;   // largest exhaustive scan over a Hom space (5^7)
    int path_len_cap = 24;            // bail-out bound when building the path basis
};

struct Arrow {
    std::string name;
    int from = -1;
    int to = -1;
};

// One term of a relation; `arrows` lists arrow indices in diagrammatic order,
// arrows[0] is applied first.
struct RelTerm {
    uint32_t coeff = 1;
    std::vector<int> arrows;
};
using Relation = std::vector<RelTerm>;

struct Path {
    int from = -1, to = -1;
    std::vector<int> arrows;  // diagrammatic order
};

// Matrix representation of the quiver: action[a] maps the space at the
// source of a into the space at its target.
struct Rep {
    std::vector<int> dims;
    std::vector<FpMatrix> action;
    std::string name;

    int total_dim() const {
        int t = 0;
        for (int d : dims) t += d;
        return t;
    }
    bool is_zero() const { return total_dim() == 0; }
};

// A homomorphism of representations: one matrix per vertex, commuting with
// every arrow action.
struct Morphism {
    std::vector<FpMatrix> mats;
};

// Columns of basis[v] span an arrow-invariant subspace of the parent.
struct SubmoduleWitness {
    std::vector<FpMatrix> basis;
    int total_dim() const {
        int t = 0;
        for (auto& b : basis) t += b.cols();
        return t;
    }
};

class Algebra {
public:
    Caps caps;
    std::vector<std::string> vertices;
    std::vector<Arrow> arrows;
    std::vector<Relation> relations;
    std::vector<Rep> ground;           // verified complete list of indecomposables
    std::vector<int> proj_of_vertex;   // ground index of P(v)
    std::vector<int> inj_of_vertex;    // ground index of I(v)
    std::vector<Rep> path_projectives; // path-basis copies, used for presentations
    std::vector<Rep> path_injectives;
    std::vector<std::vector<Path>> proj_basis_paths;  // coordinates of P(v), grouped by vertex

    uint32_t prime() const { return caps.prime; }
    int n_vertices() const { return (int)vertices.size(); }
    int n_arrows() const { return (int)arrows.size(); }
    int n_ground() const { return (int)ground.size(); }

    int vertex_index(const std::string& name) const;
    int ground_index_by_name(const std::string& name) const;
    int vertex_of_injective(int ground_idx) const;  // -1 if not an injective
    std::vector<int> injective_ground_ids() const;

    bool is_brick(int g) const;

    // memoized ground-to-ground data; fills are idempotent and mutex guarded
    const std::vector<Morphism>& hom_ground(int i, int j) const;
    int hom_dim_ground(int i, int j) const;
    int ext1_ground(int i, int j) const;
    const std::vector<SubmoduleWitness>& submodules_ground(int g) const;

private:
    struct Cache {
        std::mutex mu;
        std::map<std::pair<int, int>, std::vector<Morphism>> hom;
        std::map<std::pair<int, int>, int> ext;
        std::map<int, std::vector<SubmoduleWitness>> sub;
    };
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

// --- construction ---------------------------------------------------------

Algebra make_algebra(Caps caps, std::vector<std::string> vertices, std::vector<Arrow> arrows,
                     std::vector<Relation> relations, std::vector<Rep> ground);
// Linear-A quiver preset; orientation[k] = +1 orients edge k as k+1 -> k+2,
// -1 the other way. The ground set is the full list of interval modules.
Algebra make_type_a(int n, const std::vector<int>& orientation, Caps caps);

Algebra load_algebra(const std::string& json_text, Caps caps,
                     std::optional<uint32_t> prime_override = {});
Algebra load_algebra_file(const std::string& path, Caps caps,
                          std::optional<uint32_t> prime_override = {});

// --- representation helpers ------------------------------------------------

Rep zero_rep(const Algebra& A);
Rep simple_rep(const Algebra& A, int v);
Rep direct_sum_rep(const Algebra& A, const Rep& M, const Rep& N);
bool relations_hold(const Algebra& A, const Rep& M, std::string* which = nullptr);
FpMatrix path_action(const Algebra& A, const Rep& M, const Path& p);

// Direct sum of ground-set copies, with per-vertex column offsets kept for
// block bookkeeping.
struct DirectSum {
    Rep rep;
    std::vector<int> parts;                  // ground indices
    std::vector<std::vector<int>> offsets;   // offsets[v][k] = column offset of part k at vertex v
};
DirectSum make_dsum(const Algebra& A, const std::vector<int>& parts);

Morphism zero_morphism(const Algebra& A, const Rep& src, const Rep& dst);
Morphism identity_morphism(const Algebra& A, const Rep& M);
Morphism compose(const Morphism& f, const Morphism& g);  // f after g
bool is_module_map(const Algebra& A, const Rep& src, const Rep& dst, const Morphism& f);
FpVec vec_of(const Morphism& f);
Morphism morphism_from_vec(const Algebra& A, const Rep& src, const Rep& dst, const FpVec& v);
bool invertible_vertexwise(const Morphism& f);
Morphism inverse_vertexwise(const Morphism& f);
bool surjective_vertexwise(const Morphism& f);
bool injective_on(const Rep& src, const Morphism& f);

// --- Hom / Ext / isomorphism ------------------------------------------------

std::vector<Morphism> hom_basis(const Algebra& A, const Rep& M, const Rep& N);
int ext1_dim(const Algebra& A, const Rep& M, const Rep& N);
bool is_isomorphic(const Algebra& A, const Rep& M, const Rep& N);
bool is_indecomposable(const Algebra& A, const Rep& M);

std::vector<int> decompose(const Algebra& A, const Rep& M);  // sorted ground ids

struct DecompMaps {
    std::vector<int> parts;
    std::vector<Morphism> incl;  // ground[parts[k]] -> M
    std::vector<Morphism> proj;  // M -> ground[parts[k]]
};
DecompMaps decompose_with_maps(const Algebra& A, const Rep& M);

// projective cover as a concrete epimorphism from a sum of path projectives
struct ProjCover {
    Rep source;
    Morphism g;
};
ProjCover projective_cover(const Algebra& A, const Rep& M);

// --- submodules -------------------------------------------------------------

std::vector<SubmoduleWitness> submodules(const Algebra& A, const Rep& M);
Rep sub_rep(const Algebra& A, const Rep& M, const SubmoduleWitness& w);
struct Quotient {
    Rep rep;
    Morphism proj;  // M -> rep
};
Quotient quotient_rep(const Algebra& A, const Rep& M, const SubmoduleWitness& w);
std::vector<Rep> quotients(const Algebra& A, const Rep& M);

SubmoduleWitness trace_submodule(const Algebra& A, const std::vector<int>& S, const Rep& M);
SubmoduleWitness reject_submodule(const Algebra& A, const std::vector<int>& S, const Rep& M);
SubmoduleWitness image_witness(const Algebra& A, const Rep& dst, const Morphism& f);
SubmoduleWitness kernel_witness(const Algebra& A, const Rep& src, const Morphism& f);
SubmoduleWitness full_witness(const Algebra& A, const Rep& M);
bool witness_contains(const SubmoduleWitness& big, const SubmoduleWitness& small);

// --- minimal approximations ---------------------------------------------------

struct RightApprox {
    DirectSum source;
    Morphism g;  // source -> M
};
RightApprox min_right_approx(const Algebra& A, const std::vector<int>& C, const Rep& M);

struct LeftApprox {
    DirectSum target;
    Morphism f;  // M -> target
};
LeftApprox min_left_approx(const Algebra& A, const Rep& M, const std::vector<int>& C);

// minimal injective copresentation 0 -> M -> i0 -> i1, in ground coordinates
struct Copres {
    DirectSum i0, i1;
    Morphism d;      // i0 -> i1
    Morphism embed;  // M -> i0
};
Copres injective_copresentation(const Algebra& A, const Rep& M);

}  // namespace torslat
