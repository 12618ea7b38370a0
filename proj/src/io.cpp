#include "torslat/io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "torslat/errors.hpp"

namespace torslat {

using ordered_json = nlohmann::ordered_json;

namespace {

std::vector<std::string> member_names(const Algebra& A, const Bitset& b) {
    std::vector<std::string> out;
    for (int i : b.members()) out.push_back(A.ground[i].name);
    return out;
}

std::vector<std::string> ground_names(const Algebra& A, const std::vector<int>& ids) {
    std::vector<std::string> out;
    for (int i : ids) out.push_back(A.ground[i].name);
    return out;
}

ordered_json classes_json(const Lattice& L) {
    ordered_json arr = ordered_json::array();
    for (int id = 0; id < L.n_classes(); ++id) {
        ordered_json c;
        c["id"] = id;
        c["members"] = member_names(L.algebra(), L.members(id));
        arr.push_back(c);
    }
    return arr;
}

ordered_json arrows_json(const Lattice& L) {
    ordered_json arr = ordered_json::array();
    for (const HasseArrow& a : L.arrows()) {
        ordered_json e;
        e["upper"] = a.upper;
        e["lower"] = a.lower;
        e["label"] = L.algebra().ground[a.label].name;
        arr.push_back(e);
    }
    return arr;
}

const char* tag_name(NegIsolatedTag t) {
    switch (t) {
        case NegIsolatedTag::Critical: return "critical";
        case NegIsolatedTag::Special: return "special";
        case NegIsolatedTag::SpecialInjective: return "special-injective";
        case NegIsolatedTag::Plain: return "plain";
    }
    return "plain";
}

ordered_json point_json(const Ziegler& Z, const Point& p, NegIsolatedTag tag) {
    const Algebra& A = Z.algebra();
    ordered_json j;
    j["kind"] = p.kind == Point::Copresentation ? "copresentation-of" : "shifted-injective";
    j["module"] = p.kind == Point::Copresentation ? A.ground[p.id].name
                                                  : A.ground[A.inj_of_vertex[p.id]].name;
    j["tag"] = tag_name(tag);
    return j;
}

ordered_json rigid_set_json(Ziegler& Z, int class_id) {
    const RigidSet& rs = Z.rigid_set(class_id);
    const Algebra& A = Z.algebra();
    ordered_json j;
    j["class_id"] = class_id;
    j["Z"] = ground_names(A, rs.Z);
    ordered_json inj = ordered_json::array();
    for (int v : rs.special_inj) inj.push_back(A.ground[A.inj_of_vertex[v]].name);
    j["I"] = inj;
    ordered_json pts = ordered_json::array();
    for (size_t k = 0; k < rs.points.size(); ++k)
        pts.push_back(point_json(Z, rs.points[k], rs.tags[k]));
    j["points"] = pts;
    j["arrows_verified"] = rs.arrows_verified;
    return j;
}

ordered_json mutation_json(Ziegler& Z, const MutationRecord& m) {
    ordered_json j;
    j["upper"] = m.upper;
    j["lower"] = m.lower;
    j["label"] = Z.algebra().ground[m.label].name;
    j["lambda"] = Z.point_name(m.lambda);
    j["rho"] = Z.point_name(m.rho);
    ordered_json eps = ordered_json::array();
    for (const Point& p : m.epsilon_parts) eps.push_back(Z.point_name(p));
    j["epsilon"] = eps;
    j["involution_ok"] = m.involution_ok;
    return j;
}

ordered_json kpoints_json(const std::vector<kron::KPoint>& pts,
                          const std::vector<std::string>& labels) {
    ordered_json arr = ordered_json::array();
    for (const auto& p : pts) arr.push_back(kron::point_name(p, labels));
    return arr;
}

void write_doc(std::ostream& out, const ordered_json& j) { out << j.dump(2) << "\n"; }

int run_kronecker(const RunConfig& cfg, std::ostream& out) {
    auto labels = kron::default_lambda_labels();
    int nl = (int)labels.size();
    if (cfg.kron_action == "spectrum" || cfg.kron_action.empty()) {
        ordered_json j;
        ordered_json pairs = ordered_json::array();
        for (auto tp : {kron::PairName::RQ_P, kron::PairName::Q_PR}) {
            ordered_json pj;
            pj["name"] = kron::pair_label(tp);
            pj["torsion"] = tp == kron::PairName::RQ_P ? "add(regular + preinjective)"
                                                       : "add(preinjective)";
            pj["torsionfree"] = tp == kron::PairName::RQ_P ? "add(preprojective)"
                                                           : "add(preprojective + regular)";
            pj["max_rigid"] = kpoints_json(kron::k_max_rigid(tp, nl), labels);
            auto at = kron::k_almost_torsion(tp, nl);
            pj["tf_almost_torsion"] = kpoints_json(at.tf_almost_torsion, labels);
            pj["torsion_almost_torsionfree"] = kpoints_json(at.torsion_almost_tf, labels);
            pairs.push_back(pj);
        }
        j["lambda_labels"] = labels;
        j["pairs"] = pairs;
        ordered_json inter = ordered_json::array();
        auto a = kron::k_max_rigid(kron::PairName::RQ_P, nl);
        auto b = kron::k_max_rigid(kron::PairName::Q_PR, nl);
        for (const auto& p : a)
            if (std::find(b.begin(), b.end(), p) != b.end())
                inter.push_back(kron::point_name(p, labels));
        j["intersection"] = inter;
        write_doc(out, j);
        return 0;
    }
    if (cfg.kron_action == "mutate") {
        kron::KMutation m = kron::k_mutate(nl);
        ordered_json j;
        j["fixed"] = kpoints_json(m.fixed, labels);
        ordered_json ex = ordered_json::array();
        for (const auto& e : m.exchanges) {
            ordered_json ej;
            ej["lambda"] = labels[e.lambda];
            ej["critical"] = kron::point_name(e.critical, labels);
            ej["special"] = kron::point_name(e.special, labels);
            ej["envelope_sequence"] = e.envelope_sequence;
            ej["cover_sequence"] = e.cover_sequence;
            ex.push_back(ej);
        }
        j["exchanges"] = ex;
        j["irreducible"] = m.irreducible;
        j["wide"] = m.wide;
        j["semibrick"] = kpoints_json(m.semibrick, labels);
        write_doc(out, j);
        return 0;
    }
    if (cfg.kron_action == "theta") {
        std::vector<long long> th = cfg.theta.empty() ? std::vector<long long>{1, -1} : cfg.theta;
        if (th.size() != 2) throw InputError("kronecker theta needs two integers");
        kron::KThetaInterval ti = kron::k_theta_interval(th[0], th[1], nl);
        ordered_json j;
        j["theta"] = ti.theta;
        j["interval"] = {{"lower", kron::pair_label(ti.lower)}, {"upper", kron::pair_label(ti.upper)}};
        j["brick_family"] = kpoints_json(ti.brick_family, labels);
        write_doc(out, j);
        return 0;
    }
    throw InputError("unknown kronecker action '" + cfg.kron_action +
                     "' (expected spectrum, mutate or theta)");
}

}  // namespace

std::string emit_dot(const Lattice& L) {
    const Algebra& A = L.algebra();
    std::ostringstream os;
    os << "digraph tors {\n";
    os << "  rankdir=TB;\n";
    for (int id = 0; id < L.n_classes(); ++id) {
        os << "  n" << id << " [label=\"" << id << ": {";
        auto names = member_names(A, L.members(id));
        for (size_t k = 0; k < names.size(); ++k) {
            if (k) os << ",";
            os << names[k];
        }
        os << "}\"];\n";
    }
    for (const HasseArrow& a : L.arrows())
        os << "  n" << a.upper << " -> n" << a.lower << " [label=\"" << A.ground[a.label].name
           << "\"];\n";
    os << "}\n";
    return os.str();
}

int run(const RunConfig& cfg, std::ostream& out) {
    try {
        if (cfg.command == "kronecker") return run_kronecker(cfg, out);
        if (cfg.algebra_path.empty()) throw InputError("missing algebra file");
        Algebra A = load_algebra_file(cfg.algebra_path, cfg.caps, cfg.prime_override);
        Lattice L(A);

        if (cfg.command == "lattice") {
            ordered_json j;
            j["prime"] = A.prime();
            j["count"] = L.n_classes();
            j["classes"] = classes_json(L);
            write_doc(out, j);
        } else if (cfg.command == "hasse" || cfg.command == "labels") {
            ordered_json j;
            j["classes"] = classes_json(L);
            j["arrows"] = arrows_json(L);
            if (cfg.command == "labels") {
                ordered_json lbl = ordered_json::array();
                for (int id = 0; id < L.n_classes(); ++id) {
                    ordered_json c;
                    c["id"] = id;
                    c["tf_almost_torsion"] = ground_names(A, L.tf_almost_torsion(id));
                    c["torsion_almost_torsionfree"] =
                        ground_names(A, L.torsion_almost_torsionfree(id));
                    lbl.push_back(c);
                }
                j["almost_torsion"] = lbl;
            }
            if (!cfg.dot_path.empty()) {
                std::ofstream df(cfg.dot_path);
                if (!df) throw InputError("cannot write DOT file '" + cfg.dot_path + "'");
                df << emit_dot(L);
            }
            write_doc(out, j);
        } else if (cfg.command == "wide") {
            Ziegler Z(L);
            ordered_json arr = ordered_json::array();
            for (int u = 0; u < L.n_classes(); ++u)
                for (int t = 0; t < L.n_classes(); ++t) {
                    if (!L.members(u).subset_of(L.members(t))) continue;
                    auto sb = L.wide_interval_check(u, t);
                    if (!sb) continue;
                    ordered_json w;
                    w["lower"] = u;
                    w["upper"] = t;
                    w["semibrick"] = ground_names(A, *sb);
                    ordered_json inter = ordered_json::array();
                    const RigidSet& ru = Z.rigid_set(u);
                    const RigidSet& rt = Z.rigid_set(t);
                    for (const Point& p : ru.points)
                        if (std::find(rt.points.begin(), rt.points.end(), p) != rt.points.end())
                            inter.push_back(Z.point_name(p));
                    w["closed_rigid_set"] = inter;
                    arr.push_back(w);
                }
            ordered_json j;
            j["wide_intervals"] = arr;
            write_doc(out, j);
        } else if (cfg.command == "cosilt") {
            Ziegler Z(L);
            ordered_json arr = ordered_json::array();
            if (cfg.class_id) {
                if (*cfg.class_id < 0 || *cfg.class_id >= L.n_classes())
                    throw InputError("class id out of range");
                arr.push_back(rigid_set_json(Z, *cfg.class_id));
            } else {
                for (int id = 0; id < L.n_classes(); ++id) arr.push_back(rigid_set_json(Z, id));
            }
            ordered_json j;
            j["cosilting"] = arr;
            write_doc(out, j);
        } else if (cfg.command == "mutate") {
            Ziegler Z(L);
            ordered_json arr = ordered_json::array();
            for (int k = 0; k < (int)L.arrows().size(); ++k) {
                const HasseArrow& a = L.arrows()[k];
                if (cfg.class_id && a.upper != *cfg.class_id && a.lower != *cfg.class_id) continue;
                arr.push_back(mutation_json(Z, Z.mutate(k)));
            }
            ordered_json j;
            j["mutations"] = arr;
            write_doc(out, j);
        } else if (cfg.command == "semistable") {
            if (cfg.theta.empty()) throw InputError("semistable needs --theta");
            SemistableRecord rec = L.semistable_pairs(cfg.theta);
            ordered_json j;
            j["theta"] = rec.theta;
            j["t_strict"] = member_names(A, rec.t_strict);
            j["t_bar"] = member_names(A, rec.t_bar);
            j["f_strict"] = member_names(A, rec.f_strict);
            j["f_bar"] = member_names(A, rec.f_bar);
            j["semistable"] = member_names(A, rec.semistable);
            j["interval"] = {{"lower", rec.lower_id}, {"upper", rec.upper_id}};
            j["semibrick"] = ground_names(A, rec.semibrick);
            write_doc(out, j);
        } else if (cfg.command == "bricks") {
            Ziegler Z(L);
            ordered_json arr = ordered_json::array();
            for (int b : Z.bricks()) {
                int grain = Z.grain_of_brick(b);
                Bitset tN(A.n_ground());
                for (int x = 0; x < A.n_ground(); ++x)
                    if (A.hom_dim_ground(x, grain) == 0) tN.set(x);
                ordered_json e;
                e["brick"] = A.ground[b].name;
                e["grain"] = A.ground[grain].name;
                e["cmi_class"] = L.index_of(tN);
                arr.push_back(e);
            }
            ordered_json j;
            j["bricks"] = arr;
            ordered_json cmi = ordered_json::array();
            for (int id : L.cmi_classes()) {
                ordered_json c;
                c["id"] = id;
                c["brick"] = A.ground[L.brick_of_cmi(id)].name;
                cmi.push_back(c);
            }
            j["cmi_classes"] = cmi;
            write_doc(out, j);
        } else {
            throw InputError("unknown command '" + cfg.command + "'");
        }
        return 0;
    } catch (const TheoremViolation& e) {
        ordered_json j;
        j["error"] = "theorem-violation";
        j["statement"] = e.statement;
        j["detail"] = e.what();
        write_doc(out, j);
        return 3;
    } catch (const ResourceError& e) {
        ordered_json j;
        j["error"] = "resource-cap";
        j["detail"] = e.what();
        write_doc(out, j);
        return 2;
    } catch (const InputError& e) {
        ordered_json j;
        j["error"] = "input";
        j["detail"] = e.what();
        write_doc(out, j);
        return 1;
    }
}

}  // namespace torslat
