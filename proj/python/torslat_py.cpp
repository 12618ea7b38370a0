#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>
#include <memory>
#include <fstream>
#include <sstream>

#include "torslat/io.hpp"

namespace py = pybind11;
using namespace torslat;
using ordered_json = nlohmann::ordered_json;

namespace {

py::object json_to_py(const ordered_json& j) {
    switch (j.type()) {
        case ordered_json::value_t::object: {
            py::dict d;
            for (auto it = j.begin(); it != j.end(); ++it)
                d[py::str(it.key())] = json_to_py(it.value());
            return d;
        }
        case ordered_json::value_t::array: {
            py::list l;
            for (const auto& e : j) l.append(json_to_py(e));
            return l;
        }
        case ordered_json::value_t::string: return py::str(j.get<std::string>());
        case ordered_json::value_t::boolean: return py::bool_(j.get<bool>());
        case ordered_json::value_t::number_integer: return py::int_(j.get<long long>());
        case ordered_json::value_t::number_unsigned: return py::int_(j.get<unsigned long long>());
        case ordered_json::value_t::number_float: return py::float_(j.get<double>());
        default: return py::none();
    }
}

py::object run_to_py(RunConfig cfg) {
    std::ostringstream os;
    int rc = run(cfg, os);
    ordered_json j = ordered_json::parse(os.str());
    if (rc != 0) {
        std::string what = j.contains("detail") ? j["detail"].get<std::string>() : "error";
        if (rc == 1) throw py::value_error(what);
        throw std::runtime_error(what);
    }
    return json_to_py(j);
}

// One loaded algebra with its lattice and cosilting data computed on demand.
class Session {
public:
    explicit Session(const std::string& json_text, std::optional<uint32_t> prime) {
        Caps caps;
        alg_ = std::make_unique<Algebra>(load_algebra(json_text, caps, prime));
    }

    int n_classes() { return lattice().n_classes(); }
    uint32_t prime() const { return alg_->prime(); }

    std::vector<std::string> module_names() const {
        std::vector<std::string> out;
        for (const Rep& r : alg_->ground) out.push_back(r.name);
        return out;
    }

    py::object lattice_doc() {
        ordered_json arr = ordered_json::array();
        for (int id = 0; id < lattice().n_classes(); ++id) {
            ordered_json c;
            c["id"] = id;
            ordered_json mem = ordered_json::array();
            for (int i : lattice().members(id).members()) mem.push_back(alg_->ground[i].name);
            c["members"] = mem;
            arr.push_back(c);
        }
        return json_to_py(arr);
    }

    py::object hasse_doc() {
        ordered_json arr = ordered_json::array();
        for (const HasseArrow& a : lattice().arrows()) {
            ordered_json e;
            e["upper"] = a.upper;
            e["lower"] = a.lower;
            e["label"] = alg_->ground[a.label].name;
            arr.push_back(e);
        }
        return json_to_py(arr);
    }

    py::object cosilt_doc(int class_id) {
        const RigidSet& rs = ziegler().rigid_set(class_id);
        ordered_json j;
        j["class_id"] = class_id;
        ordered_json zn = ordered_json::array();
        for (int z : rs.Z) zn.push_back(alg_->ground[z].name);
        j["Z"] = zn;
        ordered_json in = ordered_json::array();
        for (int v : rs.special_inj) in.push_back(alg_->ground[alg_->inj_of_vertex[v]].name);
        j["I"] = in;
        ordered_json pts = ordered_json::array();
        for (size_t k = 0; k < rs.points.size(); ++k) {
            ordered_json pj;
            pj["point"] = ziegler().point_name(rs.points[k]);
            switch (rs.tags[k]) {
                case NegIsolatedTag::Critical: pj["tag"] = "critical"; break;
                case NegIsolatedTag::Special: pj["tag"] = "special"; break;
                case NegIsolatedTag::SpecialInjective: pj["tag"] = "special-injective"; break;
                default: pj["tag"] = "plain";
            }
            pts.push_back(pj);
        }
        j["points"] = pts;
        return json_to_py(j);
    }

    py::object mutate_doc(int arrow_index) {
        MutationRecord m = ziegler().mutate(arrow_index);
        ordered_json j;
        j["upper"] = m.upper;
        j["lower"] = m.lower;
        j["label"] = alg_->ground[m.label].name;
        j["lambda"] = ziegler().point_name(m.lambda);
        j["rho"] = ziegler().point_name(m.rho);
        ordered_json eps = ordered_json::array();
        for (const Point& pp : m.epsilon_parts) eps.push_back(ziegler().point_name(pp));
        j["epsilon"] = eps;
        j["involution_ok"] = m.involution_ok;
        return json_to_py(j);
    }

    py::object semistable_doc(const std::vector<long long>& theta) {
        SemistableRecord rec = lattice().semistable_pairs(theta);
        ordered_json j;
        auto names = [&](const Bitset& b) {
            ordered_json a = ordered_json::array();
            for (int i : b.members()) a.push_back(alg_->ground[i].name);
            return a;
        };
        j["t_strict"] = names(rec.t_strict);
        j["t_bar"] = names(rec.t_bar);
        j["f_strict"] = names(rec.f_strict);
        j["f_bar"] = names(rec.f_bar);
        j["semistable"] = names(rec.semistable);
        j["lower"] = rec.lower_id;
        j["upper"] = rec.upper_id;
        return json_to_py(j);
    }

    py::object bricks_doc() {
        ordered_json arr = ordered_json::array();
        for (int b : ziegler().bricks()) {
            ordered_json e;
            e["brick"] = alg_->ground[b].name;
            e["grain"] = alg_->ground[ziegler().grain_of_brick(b)].name;
            arr.push_back(e);
        }
        return json_to_py(arr);
    }

    std::string dot() { return emit_dot(lattice()); }

private:
    std::unique_ptr<Algebra> alg_;
    std::unique_ptr<Lattice> lat_;
    std::unique_ptr<Ziegler> zg_;

    Lattice& lattice() {
        if (!lat_) lat_ = std::make_unique<Lattice>(*alg_);
        return *lat_;
    }
    Ziegler& ziegler() {
        lattice();
        if (!zg_) zg_ = std::make_unique<Ziegler>(*lat_);
        return *zg_;
    }
};

}  // namespace

PYBIND11_MODULE(torslat, m) {
    m.doc() = "torsion-class lattices, cosilting mutation and brick labels for "
              "representation-finite quiver algebras";

    py::class_<Session>(m, "Algebra")
        .def(py::init([](const std::string& text, std::optional<uint32_t> prime) {
                 return new Session(text, prime);
             }),
             py::arg("json_text"), py::arg("prime") = py::none())
        .def_property_readonly("prime", &Session::prime)
        .def_property_readonly("modules", &Session::module_names)
        .def("n_torsion_classes", &Session::n_classes)
        .def("lattice", &Session::lattice_doc)
        .def("hasse", &Session::hasse_doc)
        .def("cosilt", &Session::cosilt_doc, py::arg("class_id"))
        .def("mutate", &Session::mutate_doc, py::arg("arrow_index"))
        .def("semistable", &Session::semistable_doc, py::arg("theta"))
        .def("bricks", &Session::bricks_doc)
        .def("dot", &Session::dot);

    m.def("load_file", [](const std::string& path, std::optional<uint32_t> prime) {
        std::ifstream in(path);
        if (!in) throw py::value_error("cannot open '" + path + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        return new Session(ss.str(), prime);
    }, py::arg("path"), py::arg("prime") = py::none());

    m.def("kronecker_spectrum", []() {
        RunConfig cfg;
        cfg.command = "kronecker";
        cfg.kron_action = "spectrum";
        return run_to_py(cfg);
    });
    m.def("kronecker_mutate", []() {
        RunConfig cfg;
        cfg.command = "kronecker";
        cfg.kron_action = "mutate";
        return run_to_py(cfg);
    });
    m.def("kronecker_theta", [](long long a, long long b) {
        RunConfig cfg;
        cfg.command = "kronecker";
        cfg.kron_action = "theta";
        cfg.theta = {a, b};
        return run_to_py(cfg);
    }, py::arg("a"), py::arg("b"));
}
