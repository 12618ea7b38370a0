#include "torslat/kronecker.hpp"

#include <algorithm>

#include "torslat/errors.hpp"

namespace torslat::kron {

std::vector<std::string> default_lambda_labels() { return {"λ0", "λ1", "λ∞"}; }

std::string point_name(const KPoint& p, const std::vector<std::string>& labels) {
    auto lam = [&](int i) {
        return (i >= 0 && i < (int)labels.size()) ? labels[i] : ("λ" + std::to_string(i));
    };
    switch (p.tag) {
        case KPoint::Preproj: return "Preproj(" + std::to_string(p.index) + ")";
        case KPoint::Regular:
            return "Regular(" + lam(p.lambda) + "," + std::to_string(p.index) + ")";
        case KPoint::Preinj: return "Preinj(" + std::to_string(p.index) + ")";
        case KPoint::Pruefer: return "Pruefer(" + lam(p.lambda) + ")";
        case KPoint::Adic: return "Adic(" + lam(p.lambda) + ")";
        case KPoint::Generic: return "G";
    }
    return "?";
}

// Hom table. Maps run left to right in the Auslander-Reiten order
// preprojective -> regular -> preinjective; distinct tubes are orthogonal;
// the Pruefer module of a tube receives its tube, the adic module surjects
// onto it; the generic module maps into preinjectives and Pruefer modules
// and is orthogonal to everything regular.
bool k_hom_nonzero(const KPoint& x, const KPoint& y) {
    using T = KPoint::Tag;
    switch (x.tag) {
        case T::Preproj:
            switch (y.tag) {
                case T::Preproj: return y.index >= x.index;
                case T::Preinj: return x.index + y.index > 0;
                default: return true;  // regular, Pruefer, adic, generic
            }
        case T::Regular:
            switch (y.tag) {
                case T::Regular:
                case T::Pruefer: return y.lambda == x.lambda;
                case T::Preinj: return true;
                default: return false;  // preprojective, adic, generic
            }
        case T::Preinj:
            return y.tag == T::Preinj && y.index <= x.index;
        case T::Pruefer:
            switch (y.tag) {
                case T::Preinj: return true;
                case T::Pruefer: return y.lambda == x.lambda;
                default: return false;
            }
        case T::Adic:
            switch (y.tag) {
                case T::Regular:
                case T::Pruefer:
                case T::Adic: return y.lambda == x.lambda;
                case T::Preinj:
                case T::Generic: return true;
                default: return false;
            }
        case T::Generic:
            switch (y.tag) {
                case T::Preinj:
                case T::Pruefer:
                case T::Generic: return true;
                default: return false;
            }
    }
    return false;
}

namespace {

// tau fixes the regular and infinite-dimensional points and shifts the two
// transfinite components; Preproj(0) and Preproj(1) are the projectives
bool tau_defined(const KPoint& x) {
    return !(x.tag == KPoint::Preproj && x.index <= 1);
}

KPoint tau(const KPoint& x) {
    KPoint t = x;
    if (x.tag == KPoint::Preproj) t.index = x.index - 2;
    if (x.tag == KPoint::Preinj) t.index = x.index + 2;
    return t;
}

}  // namespace

// Ext table. Pruefer modules and the generic module are injective, so
// nothing extends by them; for finite dimensional x the Auslander-Reiten
// formula Ext^1(x, y) = D Hom(y, tau x) decides the entry; a Pruefer module
// extends by its own tube's adic module (the completion sequence), and the
// two maximal rigid sets {G, adics} and {G, Pruefers} force the remaining
// infinite-by-infinite entries to vanish.
bool k_ext_nonzero(const KPoint& x, const KPoint& y) {
    using T = KPoint::Tag;
    if (y.tag == T::Pruefer || y.tag == T::Generic) return false;
    switch (x.tag) {
        case T::Preproj:
        case T::Regular:
        case T::Preinj:
            return tau_defined(x) && k_hom_nonzero(y, tau(x));
        case T::Pruefer:
            if (y.tag == T::Adic || y.tag == T::Regular) return y.lambda == x.lambda;
            return y.tag == T::Preproj;
        case T::Adic:
            return y.tag == T::Preproj;
        case T::Generic:
            return y.tag == T::Preproj;
    }
    return false;
}

std::string pair_label(PairName p) { return p == PairName::RQ_P ? "RQ_P" : "Q_PR"; }

bool in_torsion(PairName tp, const KPoint& x) {
    using T = KPoint::Tag;
    if (tp == PairName::RQ_P)
        return x.tag == T::Regular || x.tag == T::Preinj || x.tag == T::Pruefer;
    return x.tag == T::Preinj;
}

bool in_torsionfree(PairName tp, const KPoint& x) { return !in_torsion(tp, x); }

std::vector<KPoint> k_max_rigid(PairName tp, int n_lambda) {
    std::vector<KPoint> out;
    out.push_back(KPoint{KPoint::Generic, -1, 0});
    for (int l = 0; l < n_lambda; ++l)
        out.push_back(tp == PairName::RQ_P ? KPoint{KPoint::Adic, l, 0}
                                           : KPoint{KPoint::Pruefer, l, 0});
    for (const KPoint& a : out)
        for (const KPoint& b : out)
            if (k_ext_nonzero(a, b))
                throw TheoremViolation("kronecker-rigid", "rule tables break the rigidity of " +
                                                              pair_label(tp));
    return out;
}

KAlmostTorsion k_almost_torsion(PairName tp, int n_lambda) {
    KAlmostTorsion out;
    std::vector<KPoint> simples;
    for (int l = 0; l < n_lambda; ++l) simples.push_back(KPoint{KPoint::Regular, l, 1});
    if (tp == PairName::RQ_P) {
        out.tf_almost_torsion = {KPoint{KPoint::Generic, -1, 0}};
        out.torsion_almost_tf = simples;
    } else {
        out.tf_almost_torsion = simples;
        out.torsion_almost_tf = {};
    }
    return out;
}

KMutation k_mutate(int n_lambda) {
    KMutation m;
    auto labels = default_lambda_labels();
    for (int l = 0; l < n_lambda; ++l) {
        KExchange e;
        e.lambda = l;
        e.critical = KPoint{KPoint::Pruefer, l, 0};
        e.special = KPoint{KPoint::Adic, l, 0};
        std::string S = point_name(KPoint{KPoint::Regular, l, 1}, labels);
        std::string Pr = point_name(e.critical, labels);
        std::string Ad = point_name(e.special, labels);
        e.envelope_sequence = "0 -> " + S + " -> " + Pr + " -> " + Pr + " -> 0";
        e.cover_sequence = "0 -> " + Ad + " -> " + Ad + " -> " + S + " -> 0";
        m.exchanges.push_back(std::move(e));
        m.semibrick.push_back(KPoint{KPoint::Regular, l, 1});
    }
    m.fixed = {KPoint{KPoint::Generic, -1, 0}};
    m.irreducible = (int)m.exchanges.size() == 1;
    m.wide = true;
    // sanity: the two sets really differ in the exchanged points only
    auto nu = k_max_rigid(PairName::Q_PR, n_lambda);
    auto nt = k_max_rigid(PairName::RQ_P, n_lambda);
    std::sort(nu.begin(), nu.end());
    std::sort(nt.begin(), nt.end());
    std::vector<KPoint> only_u, only_t;
    std::set_difference(nu.begin(), nu.end(), nt.begin(), nt.end(), std::back_inserter(only_u));
    std::set_difference(nt.begin(), nt.end(), nu.begin(), nu.end(), std::back_inserter(only_t));
    if ((int)only_u.size() != n_lambda || (int)only_t.size() != n_lambda)
        throw TheoremViolation("kronecker-mutation", "exchanged point count mismatch");
    return m;
}

KThetaInterval k_theta_interval(long long a, long long b, int n_lambda) {
    if (a != 1 || b != -1)
        throw InputError("only the g-vector (1,-1) is modeled for the Kronecker algebra");
    KThetaInterval out;
    out.theta = {a, b};
    out.lower = PairName::Q_PR;
    out.upper = PairName::RQ_P;
    for (int l = 0; l < n_lambda; ++l) out.brick_family.push_back(KPoint{KPoint::Regular, l, 1});
    return out;
}

}  // namespace torslat::kron
