#include <doctest.h>

#include "spur/counterexample.hpp"
#include "spur/errors.hpp"
#include "support/fixtures.hpp"

using namespace spur;

TEST_CASE("TL lasso <s1,(s2)^w> validates") {
    auto setup = fixtures::tl();
    Counterexample ce{PathKind::lasso, {"stop", "go"}, 1};
    CHECK_NOTHROW(validate_counterexample(setup.abstract_model, ce));
}

TEST_CASE("single initial state finite path validates") {
    auto setup = fixtures::f12();
    Counterexample ce{PathKind::finite, {"a"}, 0};
    CHECK_NOTHROW(validate_counterexample(setup.abstract_model, ce));
}

TEST_CASE("missing abstract transition is reported with its position") {
    auto setup = fixtures::f12();
    Counterexample ce{PathKind::finite, {"a", "d"}, 0};
    try {
        validate_counterexample(setup.abstract_model, ce);
        FAIL("expected ModelError");
    } catch (const ModelError& e) {
        CHECK(std::string(e.what()) == "no abstract transition at position 0");
    }
}

TEST_CASE("validation rejects the other malformed shapes") {
    auto setup = fixtures::tl();
    Counterexample empty{PathKind::finite, {}, 0};
    CHECK_THROWS_AS(validate_counterexample(setup.abstract_model, empty),
                    ModelError);
    Counterexample non_initial{PathKind::finite, {"go"}, 0};
    CHECK_THROWS_AS(validate_counterexample(setup.abstract_model, non_initial),
                    ModelError);
    // go->stop exists but stop->stop does not, so the loop-back is missing
    Counterexample bad_loop{PathKind::lasso, {"stop"}, 0};
    CHECK_THROWS_AS(validate_counterexample(setup.abstract_model, bad_loop),
                    ModelError);
    Counterexample unknown{PathKind::finite, {"walk"}, 0};
    CHECK_THROWS_AS(validate_counterexample(setup.abstract_model, unknown),
                    ModelError);
}

TEST_CASE("cfp of the TL lasso sets the loop-back successor") {
    Counterexample ce{PathKind::lasso, {"stop", "go"}, 1};
    CFPView view = cfp(ce);
    CHECK(view.states == ce.states);
    CHECK(view.successor_of_last == "go");
    CHECK(view.loop_start == 1);
}

TEST_CASE("cfp of a finite path is the identity with no successor") {
    Counterexample ce{PathKind::finite, {"a", "b", "c"}, 0};
    CFPView view = cfp(ce);
    CHECK(view.states == ce.states);
    CHECK_FALSE(view.successor_of_last.has_value());
    CHECK_FALSE(view.loop_start.has_value());
}

TEST_CASE("cfp of a lasso with loop_start 0 points back to the head") {
    Counterexample ce{PathKind::lasso, {"x", "y", "z"}, 0};
    CFPView view = cfp(ce);
    CHECK(view.successor_of_last == "x");
    CHECK(view.states.size() == 3);
    // idempotent on the state sequence
    CHECK(cfp(ce).states == view.states);
}

TEST_CASE("path file round trip") {
    Counterexample finite{PathKind::finite, {"a", "b", "c"}, 0};
    Counterexample lasso{PathKind::lasso, {"a", "b", "c"}, 1};
    CHECK(render_path(finite) == "finite: a b c");
    CHECK(render_path(lasso) == "lasso: a ( b c )");
    CHECK(parse_path_line(render_path(finite)) == finite);
    CHECK(parse_path_line(render_path(lasso)) == lasso);

    auto paths = parse_path_file("finite: a b\n# comment\n\nlasso: ( x )\n");
    REQUIRE(paths.size() == 2);
    CHECK(paths[0].kind == PathKind::finite);
    CHECK(paths[1].kind == PathKind::lasso);
    CHECK(paths[1].loop_start == 0);
}

TEST_CASE("path parser rejects malformed lines") {
    CHECK_THROWS_AS(parse_path_line("finite:"), ParseError);
    CHECK_THROWS_AS(parse_path_line("lasso: a b"), ParseError);
    CHECK_THROWS_AS(parse_path_line("lasso: a ( )"), ParseError);
    CHECK_THROWS_AS(parse_path_line("lasso: a ( b"), ParseError);
    CHECK_THROWS_AS(parse_path_line("lasso: a ( b ) c"), ParseError);
    CHECK_THROWS_AS(parse_path_line("walk: a b"), ParseError);
}
