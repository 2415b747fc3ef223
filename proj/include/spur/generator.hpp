#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace spur {

/// Parameters for the random model generator. Generation is a pure
/// function of the parameters: the same params give byte-identical
/// output on every platform (mt19937_64 with explicit integer mapping,
/// no library distributions).
struct GenParams {
    size_t num_states = 12;
    size_t num_vars = 2;
    size_t domain_size = 3;
    double edge_density = 0.2;
    double invisible_fraction = 0.5;
    std::uint64_t seed = 0;
};

/// Emit a random model document. Variable 0 is the "group" variable,
/// assigned in contiguous blocks so hiding the other variables
/// reproduces block-fiber structures. State 0 is always initial. Throws
/// ModelError on infeasible params.
std::string gen_random_model(const GenParams& params);

/// The invisible-variable selection the toolkit derives from
/// invisible_fraction: the non-group variables, last first.
std::vector<std::string> derive_invisible(const GenParams& params);

} // namespace spur
