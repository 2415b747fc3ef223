#include "spur/generator.hpp"

#include <cstdio>
#include <random>
#include <sstream>
#include <vector>

#include "spur/errors.hpp"

namespace spur {

namespace {

// Explicit mappings instead of std::uniform_* distributions: the
// engine is pinned by the standard, the distributions are not, and the
// output must be byte-identical everywhere.
double next_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

size_t next_below(std::mt19937_64& rng, size_t n) {
    return static_cast<size_t>(rng() % n);
}

} // namespace

std::string gen_random_model(const GenParams& p) {
    if (p.num_states == 0)
        throw ModelError("infeasible generator parameters: zero states");
    if (p.num_vars == 0)
        throw ModelError("infeasible generator parameters: zero variables");
    if (p.domain_size == 0)
        throw ModelError("infeasible generator parameters: empty domains");
    if (p.edge_density < 0.0 || p.edge_density > 1.0)
        throw ModelError("infeasible generator parameters: edge_density "
                         "outside [0,1]");
    if (p.invisible_fraction < 0.0 || p.invisible_fraction > 1.0)
        throw ModelError("infeasible generator parameters: "
                         "invisible_fraction outside [0,1]");

    std::mt19937_64 rng(p.seed);
    std::ostringstream out;
    char header[160];
    std::snprintf(header, sizeof(header),
                  "# generated model: states=%zu vars=%zu domain=%zu "
                  "density=%.6g fraction=%.6g seed=%llu",
                  p.num_states, p.num_vars, p.domain_size, p.edge_density,
                  p.invisible_fraction,
                  static_cast<unsigned long long>(p.seed));
    out << header << '\n';

    // Variable 0 is the group variable; its values split the states
    // into contiguous blocks.
    out << "var g :";
    for (size_t d = 0; d < p.domain_size; ++d)
        out << " g" << d;
    out << '\n';
    for (size_t v = 1; v < p.num_vars; ++v) {
        out << "var v" << v << " :";
        for (size_t d = 0; d < p.domain_size; ++d)
            out << " d" << d;
        out << '\n';
    }

    // Draw order is fixed: valuations, then init flags, then edges.
    for (size_t s = 0; s < p.num_states; ++s) {
        size_t group = s * p.domain_size / p.num_states;
        out << "state s" << s << " g=g" << group;
        for (size_t v = 1; v < p.num_vars; ++v)
            out << " v" << v << "=d" << next_below(rng, p.domain_size);
        out << '\n';
    }

    out << "init s0\n";
    for (size_t s = 1; s < p.num_states; ++s)
        if (next_unit(rng) < 0.1)
            out << "init s" << s << '\n';

    for (size_t from = 0; from < p.num_states; ++from)
        for (size_t to = 0; to < p.num_states; ++to)
            if (next_unit(rng) < p.edge_density)
                out << "trans s" << from << " s" << to << '\n';

    return out.str();
}

std::vector<std::string> derive_invisible(const GenParams& p) {
    size_t count = static_cast<size_t>(p.invisible_fraction *
                                           static_cast<double>(p.num_vars) +
                                       0.5);
    if (count > p.num_vars)
        count = p.num_vars;
    // Hide the non-group variables first, last declared first; the
    // group variable goes invisible only when everything does.
    std::vector<std::string> names;
    for (size_t k = 0; k < count; ++k) {
        size_t v = p.num_vars - 1 - k;
        names.push_back(v == 0 ? "g" : "v" + std::to_string(v));
    }
    return names;
}

} // namespace spur
