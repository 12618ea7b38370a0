#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "torslat/errors.hpp"
#include "torslat/kronecker.hpp"

using namespace torslat::kron;

namespace {

KPoint preproj(int n) { return KPoint{KPoint::Preproj, -1, n}; }
KPoint preinj(int n) { return KPoint{KPoint::Preinj, -1, n}; }
KPoint regular(int l, int m) { return KPoint{KPoint::Regular, l, m}; }
KPoint pruefer(int l) { return KPoint{KPoint::Pruefer, l, 0}; }
KPoint adic(int l) { return KPoint{KPoint::Adic, l, 0}; }
KPoint generic() { return KPoint{KPoint::Generic, -1, 0}; }

}  // namespace

TEST_CASE("hom rule table spot checks") {
    CHECK(k_hom_nonzero(regular(0, 1), pruefer(0)));
    CHECK_FALSE(k_hom_nonzero(regular(0, 1), regular(1, 1)));
    CHECK_FALSE(k_hom_nonzero(preinj(0), preproj(0)));
    CHECK(k_hom_nonzero(preproj(0), regular(2, 3)));
    CHECK_FALSE(k_hom_nonzero(generic(), preproj(5)));
    CHECK(k_hom_nonzero(generic(), pruefer(1)));
    CHECK(k_hom_nonzero(adic(1), regular(1, 2)));
    CHECK_FALSE(k_hom_nonzero(adic(1), regular(2, 2)));
    CHECK_FALSE(k_hom_nonzero(pruefer(0), adic(0)));
    CHECK_FALSE(k_hom_nonzero(preproj(0), preinj(0)));  // Hom(S2-projective, S1-injective)
    CHECK(k_hom_nonzero(preproj(1), preinj(0)));
}

TEST_CASE("torsion pairs are hom orthogonal under the tables") {
    std::vector<KPoint> sample;
    for (int n = 0; n < 4; ++n) sample.push_back(preproj(n));
    for (int n = 0; n < 4; ++n) sample.push_back(preinj(n));
    for (int l = 0; l < 3; ++l)
        for (int m = 1; m < 4; ++m) sample.push_back(regular(l, m));
    for (int l = 0; l < 3; ++l) sample.push_back(pruefer(l));
    for (int l = 0; l < 3; ++l) sample.push_back(adic(l));
    sample.push_back(generic());

    for (PairName tp : {PairName::RQ_P, PairName::Q_PR})
        for (const KPoint& x : sample)
            for (const KPoint& y : sample) {
                CHECK(in_torsion(tp, x) != in_torsionfree(tp, x));
                if (in_torsion(tp, x) && in_torsionfree(tp, y))
                    CHECK_FALSE(k_hom_nonzero(x, y));
            }
}

TEST_CASE("maximal rigid sets of the two named pairs") {
    auto nu = k_max_rigid(PairName::Q_PR, 3);
    auto nt = k_max_rigid(PairName::RQ_P, 3);
    std::set<KPoint> su(nu.begin(), nu.end()), st(nt.begin(), nt.end());
    CHECK(su == std::set<KPoint>{generic(), pruefer(0), pruefer(1), pruefer(2)});
    CHECK(st == std::set<KPoint>{generic(), adic(0), adic(1), adic(2)});

    std::vector<KPoint> inter;
    std::set_intersection(su.begin(), su.end(), st.begin(), st.end(), std::back_inserter(inter));
    CHECK(inter == std::vector<KPoint>{generic()});

    // rigidity under the ext table
    for (const auto& s : {nu, nt})
        for (const KPoint& a : s)
            for (const KPoint& b : s) CHECK_FALSE(k_ext_nonzero(a, b));
}

TEST_CASE("almost torsion modules of the two named pairs") {
    auto rq = k_almost_torsion(PairName::RQ_P, 3);
    REQUIRE(rq.tf_almost_torsion.size() == 1);
    CHECK(rq.tf_almost_torsion[0] == generic());
    std::set<KPoint> tat(rq.torsion_almost_tf.begin(), rq.torsion_almost_tf.end());
    CHECK(tat == std::set<KPoint>{regular(0, 1), regular(1, 1), regular(2, 1)});

    auto qp = k_almost_torsion(PairName::Q_PR, 3);
    std::set<KPoint> tf(qp.tf_almost_torsion.begin(), qp.tf_almost_torsion.end());
    CHECK(tf == std::set<KPoint>{regular(0, 1), regular(1, 1), regular(2, 1)});
    CHECK(qp.torsion_almost_tf.empty());
}

TEST_CASE("mutation swaps Pruefer and adic points with the generic fixed") {
    KMutation m = k_mutate(3);
    REQUIRE(m.exchanges.size() == 3);
    CHECK(m.fixed == std::vector<KPoint>{generic()});
    CHECK_FALSE(m.irreducible);  // three exchanged points
    CHECK(m.wide);
    std::set<KPoint> sb(m.semibrick.begin(), m.semibrick.end());
    CHECK(sb == std::set<KPoint>{regular(0, 1), regular(1, 1), regular(2, 1)});
    for (const KExchange& e : m.exchanges) {
        CHECK(e.critical.tag == KPoint::Pruefer);
        CHECK(e.special.tag == KPoint::Adic);
        CHECK(e.critical.lambda == e.lambda);
        CHECK(e.special.lambda == e.lambda);
        CHECK(e.envelope_sequence.find("Regular") != std::string::npos);
        CHECK(e.cover_sequence.find("Adic") != std::string::npos);
    }
    // a single lambda would be an irreducible mutation
    CHECK(k_mutate(1).irreducible);

    // involution: swapping twice restores the sets
    auto nu = k_max_rigid(PairName::Q_PR, 3);
    auto swapped = nu;
    for (auto& p : swapped)
        if (p.tag == KPoint::Pruefer) p.tag = KPoint::Adic;
    std::sort(swapped.begin(), swapped.end());
    auto nt = k_max_rigid(PairName::RQ_P, 3);
    std::sort(nt.begin(), nt.end());
    CHECK(swapped == nt);
    for (auto& p : swapped)
        if (p.tag == KPoint::Adic) p.tag = KPoint::Pruefer;
    std::sort(swapped.begin(), swapped.end());
    std::sort(nu.begin(), nu.end());
    CHECK(swapped == nu);
}

TEST_CASE("theta interval") {
    KThetaInterval t = k_theta_interval(1, -1, 3);
    CHECK(t.lower == PairName::Q_PR);
    CHECK(t.upper == PairName::RQ_P);
    std::set<KPoint> fam(t.brick_family.begin(), t.brick_family.end());
    CHECK(fam == std::set<KPoint>{regular(0, 1), regular(1, 1), regular(2, 1)});

    CHECK_THROWS_AS((void)k_theta_interval(0, 0, 3), torslat::InputError);
    CHECK_THROWS_AS((void)k_theta_interval(-1, 1, 3), torslat::InputError);
}

TEST_CASE("point names") {
    auto labels = default_lambda_labels();
    CHECK(point_name(pruefer(0), labels) == "Pruefer(λ0)");
    CHECK(point_name(adic(2), labels) == "Adic(λ∞)");
    CHECK(point_name(regular(1, 1), labels) == "Regular(λ1,1)");
    CHECK(point_name(generic(), labels) == "G");
    CHECK(point_name(preproj(4), labels) == "Preproj(4)");
}
