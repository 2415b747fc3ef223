#include <doctest.h>

#include "spur/errors.hpp"
#include "spur/generator.hpp"
#include "spur/model.hpp"

using namespace spur;

TEST_CASE("generation is deterministic for a fixed seed") {
    GenParams params;
    params.seed = 1;
    CHECK(gen_random_model(params) == gen_random_model(params));
    GenParams other = params;
    other.seed = 2;
    CHECK(gen_random_model(params) != gen_random_model(other));
}

TEST_CASE("zero edge density deadlocks every state") {
    GenParams params;
    params.num_states = 9;
    params.edge_density = 0.0;
    params.seed = 3;
    auto K = KripkeStructure::parse(gen_random_model(params));
    CHECK(K.deadlocks().size() == 9);
}

TEST_CASE("a mid-size model parses and validates") {
    GenParams params;
    params.num_states = 50;
    params.edge_density = 0.1;
    params.seed = 7;
    auto K = KripkeStructure::parse(gen_random_model(params));
    CHECK(K.num_states() == 50);
    CHECK(!K.initial().empty());
    CHECK(K.deadlocks() == K.compute_deadlocks());
}

TEST_CASE("infeasible parameters are rejected") {
    GenParams params;
    params.num_states = 0;
    CHECK_THROWS_AS(gen_random_model(params), ModelError);
    params.num_states = 5;
    params.edge_density = 1.5;
    CHECK_THROWS_AS(gen_random_model(params), ModelError);
    params.edge_density = 0.2;
    params.num_vars = 0;
    CHECK_THROWS_AS(gen_random_model(params), ModelError);
}

TEST_CASE("group variable splits states into contiguous blocks") {
    GenParams params;
    params.num_states = 12;
    params.domain_size = 4;
    params.seed = 5;
    auto K = KripkeStructure::parse(gen_random_model(params));
    int g = K.var_index("g");
    for (int s = 0; s + 1 < K.num_states(); ++s)
        CHECK(K.states()[s].valuation[g] <= K.states()[s + 1].valuation[g]);
}

TEST_CASE("derive_invisible hides the non-group variables first") {
    GenParams params;
    params.num_vars = 3;
    params.invisible_fraction = 0.5;
    auto names = derive_invisible(params);
    CHECK(names == std::vector<std::string>{"v2", "v1"});
    params.invisible_fraction = 1.0;
    CHECK(derive_invisible(params) ==
          std::vector<std::string>{"v2", "v1", "g"});
    params.invisible_fraction = 0.0;
    CHECK(derive_invisible(params).empty());
}
