#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "torslat/quiver.hpp"

namespace torslat {

// Subset of the ground set, the carrier for torsion classes.
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(int n) : n_(n), w_((n + 63) / 64, 0) {}
    static Bitset of(int n, std::initializer_list<int> bits) {
        Bitset b(n);
        for (int i : bits) b.set(i);
        return b;
    }

    int size() const { return n_; }
    bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    void set(int i, bool v = true) {
        if (v) w_[i >> 6] |= (uint64_t)1 << (i & 63);
        else w_[i >> 6] &= ~((uint64_t)1 << (i & 63));
    }
    int count() const;
    bool subset_of(const Bitset& o) const;
    Bitset operator&(const Bitset& o) const;
    Bitset operator|(const Bitset& o) const;
    bool operator==(const Bitset& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator!=(const Bitset& o) const { return !(*this == o); }
    bool operator<(const Bitset& o) const { return w_ < o.w_; }
    std::vector<int> members() const;

private:
    int n_ = 0;
    std::vector<uint64_t> w_;
};

struct HasseArrow {
    int upper = -1;
    int lower = -1;
    int label = -1;  // ground index of the brick
};

struct SemistableRecord {
    std::vector<long long> theta;
    Bitset t_strict, t_bar, f_strict, f_bar, semistable;
    int lower_id = -1, upper_id = -1;
    std::vector<int> semibrick;
};

// The complete lattice tors(A) over the ground set, with Hasse quiver and
// brick labels. Classes are enumerated by next-closure in lectic order; ids
// are enumeration positions.
class Lattice {
public:
    explicit Lattice(const Algebra& A);

    const Algebra& algebra() const { return *alg_; }
    int n_classes() const { return (int)classes_.size(); }
    const std::vector<Bitset>& classes() const { return classes_; }
    const Bitset& members(int id) const { return classes_[id]; }
    const Bitset& torsionfree(int id) const { return tf_[id]; }
    const std::vector<HasseArrow>& arrows() const { return arrows_; }
    int index_of(const Bitset& b) const;  // -1 when not a torsion class

    Bitset torsion_closure(const Bitset& S) const;
    Bitset cotorsion_closure(const Bitset& S) const;  // smallest torsionfree class
    Bitset meet(const std::vector<Bitset>& ts) const;
    Bitset join(const std::vector<Bitset>& ts) const;

    // labels of covers below / above the class
    std::vector<int> tf_almost_torsion(int id) const;      // arrows with lower == id
    std::vector<int> torsion_almost_torsionfree(int id) const;  // arrows with upper == id

    bool filt_membership(const std::vector<int>& brick_set, const Rep& M) const;
    // semibrick when [u, t] is a wide interval, nullopt otherwise
    std::optional<std::vector<int>> wide_interval_check(int u, int t) const;

    std::vector<int> cmi_classes() const;  // ids with exactly one cover above
    int brick_of_cmi(int id) const;

    SemistableRecord semistable_pairs(const std::vector<long long>& theta) const;
    long long theta_of(const std::vector<long long>& theta, const Rep& M) const;

private:
    const Algebra* alg_;
    std::vector<Bitset> classes_;
    std::vector<Bitset> tf_;
    std::vector<HasseArrow> arrows_;

    bool in_closure(const std::vector<int>& S, Rep X) const;
    bool in_coclosure(const std::vector<int>& S, Rep X) const;
    Bitset torsionfree_of_members(const Bitset& t) const;
    int label_of_cover(int t, int u) const;
};

}  // namespace torslat
