#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "torslat/tors.hpp"

namespace torslat {

// A point of the two-term spectrum: either the minimal injective
// copresentation of a ground module, or a shifted indecomposable injective.
struct Point {
    enum Kind { Copresentation, ShiftedInjective } kind = Copresentation;
    int id = -1;  // ground index for Copresentation, vertex for ShiftedInjective

    bool operator==(const Point& o) const { return kind == o.kind && id == o.id; }
    bool operator<(const Point& o) const {
        return kind != o.kind ? kind < o.kind : id < o.id;
    }
};

enum class NegIsolatedTag { Plain, Critical, Special, SpecialInjective };

// Two-term complex of injectives in degrees 0 and 1, in ground coordinates.
struct TwoTerm {
    DirectSum c0, c1;
    Morphism d;  // c0 -> c1
};

struct RigidSet {
    int owner = -1;
    std::vector<Point> points;          // sorted
    std::vector<NegIsolatedTag> tags;   // aligned with points
    std::vector<int> Z;                 // ground ids of cosilting-module summands
    std::vector<int> special_inj;       // vertices of the shifted injectives
    int arrows_verified = 0;
};

struct MutationRecord {
    int arrow_index = -1;
    int upper = -1, lower = -1, label = -1;
    Point lambda, rho;                  // lambda in the lower set, rho in the upper
    std::vector<Point> epsilon_parts;   // middle term of the exchange triangle
    bool involution_ok = false;
};

struct WideFromRigid {
    int lower = -1, upper = -1;
    std::vector<int> semibrick;
};

// Per-torsion-class maximal rigid sets of two-term complexes, neg-isolated
// classification, and mutation along Hasse arrows. A session memoizes
// per-class data and is not itself thread safe; give each thread its own
// session over the shared algebra and lattice.
class Ziegler {
public:
    explicit Ziegler(const Lattice& L);

    const Lattice& lattice() const { return *lat_; }
    const Algebra& algebra() const { return lat_->algebra(); }

    const TwoTerm& materialize(const Point& p);
    int hom1(const Point& a, const Point& b);  // Hom(a, b[1]) in the homotopy category
    const RigidSet& rigid_set(int class_id);

    MutationRecord mutate(int arrow_index);
    WideFromRigid closed_rigid_to_wide(const std::vector<Point>& M);
    bool almost_complete_check(const std::vector<Point>& M);

    // brick <-> grain: the critical module of the torsion pair cogenerated by
    // the brick, with the full roundtrip verified
    int grain_of_brick(int brick_ground_id);
    std::vector<int> bricks() const;

    std::string point_name(const Point& p) const;

private:
    const Lattice* lat_;
    std::map<int, TwoTerm> complexes_;  // keyed by point encoding
    std::map<int, RigidSet> sets_;
    std::map<std::pair<int, int>, int> hom1_cache_;

    int point_key(const Point& p) const;
    RigidSet build_rigid_set(int class_id);
    void classify_neg_isolated(RigidSet& rs);
    std::vector<Point> all_candidate_points() const;
};

// Hom-space dimension between two-term complexes in degree 1, i.e. chain maps
// mu -> nu[1] modulo homotopy.
int complex_hom1(const Algebra& A, const TwoTerm& mu, const TwoTerm& nu);

// basis of Hom(e, l) in the homotopy category, as chain-map pairs (f0, f1)
std::vector<std::pair<Morphism, Morphism>> homK_basis(const Algebra& A, const TwoTerm& e,
                                                      const TwoTerm& l);

}  // namespace torslat
