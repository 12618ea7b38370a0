#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "torslat/io.hpp"

int main(int argc, char** argv) {
    CLI::App app{"torslat: torsion-class lattices, cosilting mutation and brick labels for "
                 "representation-finite quiver algebras"};
    app.require_subcommand(1);

    torslat::RunConfig cfg;
    long long prime_flag = 0;
    int dim_cap = 0;
    int class_id = -1;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("algebra", cfg.algebra_path, "algebra description (JSON)")->required();
        sub->add_option("--prime", prime_flag, "override the ground prime");
        sub->add_option("--dim-cap", dim_cap, "total-dimension cap for submodule scans");
    };

    for (const char* name : {"lattice", "hasse", "labels", "wide", "cosilt", "mutate",
                             "semistable", "bricks"}) {
        CLI::App* sub = app.add_subcommand(name, "");
        add_common(sub);
        if (std::string(name) == "hasse" || std::string(name) == "labels")
            sub->add_option("--dot", cfg.dot_path, "write the Hasse quiver as DOT");
        if (std::string(name) == "cosilt" || std::string(name) == "mutate")
            sub->add_option("--class", class_id, "restrict to one torsion class id");
        if (std::string(name) == "semistable")
            sub->add_option("--theta", cfg.theta, "g-vector, one integer per vertex")
                ->delimiter(',')
                ->required();
    }
    CLI::App* kron = app.add_subcommand("kronecker", "symbolic Kronecker spectrum");
    kron->add_option("action", cfg.kron_action, "spectrum | mutate | theta")
        ->check(CLI::IsMember({"spectrum", "mutate", "theta"}))
        ->required();
    kron->add_option("--theta", cfg.theta, "g-vector for the theta action")->delimiter(',');

    CLI11_PARSE(app, argc, argv);

    cfg.command = app.get_subcommands().front()->get_name();
    if (prime_flag > 0) cfg.prime_override = (uint32_t)prime_flag;
    if (dim_cap > 0) cfg.caps.dim_cap = dim_cap;
    if (class_id >= 0) cfg.class_id = class_id;
    return torslat::run(cfg, std::cout);
}
