#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "torslat/cosilt.hpp"
#include "torslat/kronecker.hpp"
#include "torslat/tors.hpp"

namespace torslat {

struct RunConfig {
    std::string command;  // lattice hasse labels wide cosilt mutate semistable bricks kronecker
    std::string algebra_path;
    std::string kron_action;  // spectrum | mutate | theta
    std::vector<long long> theta;
    std::optional<int> class_id;
    std::string dot_path;
    Caps caps;
    std::optional<uint32_t> prime_override;
};

// Dispatch a command; structured output goes to `out`. Exit status: 0 ok,
// 1 input error, 2 resource-cap error, 3 theorem violation. Errors are
// reported as machine-readable records on `out`.
int run(const RunConfig& cfg, std::ostream& out);

// deterministic DOT rendering of the Hasse quiver with brick labels
std::string emit_dot(const Lattice& L);

}  // namespace torslat
