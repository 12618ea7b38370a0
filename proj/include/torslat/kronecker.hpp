#pragma once

#include <string>
#include <vector>

namespace torslat::kron {

// Symbolic points of the Kronecker algebra's spectrum. The finite symbolic
// label set stands for points of the projective line; every statement the
// model encodes is uniform in the label.
struct KPoint {
    enum Tag { Preproj, Regular, Preinj, Pruefer, Adic, Generic } tag = Generic;
    int lambda = -1;  // label index, for Regular / Pruefer / Adic
    int index = 0;    // n for Preproj/Preinj, depth m >= 1 for Regular

    bool operator==(const KPoint& o) const {
        return tag == o.tag && lambda == o.lambda && index == o.index;
    }
    bool operator<(const KPoint& o) const {
        if (tag != o.tag) return tag < o.tag;
        if (lambda != o.lambda) return lambda < o.lambda;
        return index < o.index;
    }
};

std::vector<std::string> default_lambda_labels();  // λ0, λ1, λ∞
std::string point_name(const KPoint& p, const std::vector<std::string>& labels);

// Hom(X, Y) != 0 and Ext^1(X, Y) != 0 rule tables for the Kronecker algebra,
// standard tame hereditary facts encoded as data.
bool k_hom_nonzero(const KPoint& x, const KPoint& y);
bool k_ext_nonzero(const KPoint& x, const KPoint& y);

// The two named torsion pairs: RQ_P = (add(regular+preinjective), add(preprojective)),
// Q_PR = (add(preinjective), add(preprojective+regular)).
enum class PairName { RQ_P, Q_PR };
std::string pair_label(PairName p);
bool in_torsion(PairName tp, const KPoint& x);
bool in_torsionfree(PairName tp, const KPoint& x);

std::vector<KPoint> k_max_rigid(PairName tp, int n_lambda);

struct KAlmostTorsion {
    std::vector<KPoint> tf_almost_torsion;
    std::vector<KPoint> torsion_almost_tf;
};
KAlmostTorsion k_almost_torsion(PairName tp, int n_lambda);

struct KExchange {
    int lambda = -1;
    KPoint critical;  // Pruefer point of the lower set
    KPoint special;   // adic point of the upper set
    std::string envelope_sequence;
    std::string cover_sequence;
};

struct KMutation {
    std::vector<KExchange> exchanges;
    std::vector<KPoint> fixed;
    bool irreducible = false;
    bool wide = true;
    std::vector<KPoint> semibrick;
};
KMutation k_mutate(int n_lambda);

struct KThetaInterval {
    std::vector<long long> theta;
    PairName lower, upper;
    std::vector<KPoint> brick_family;
};
KThetaInterval k_theta_interval(long long a, long long b, int n_lambda);

}  // namespace torslat::kron
