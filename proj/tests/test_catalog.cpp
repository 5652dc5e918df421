#include "ff/catalog.hpp"
#include "ff/error.hpp"
#include "ff/structure.hpp"

#include <doctest.h>

using namespace ff;

TEST_CASE("catalog orders match closed forms") {
    const std::vector<GroupSpec> specs = {
        GroupSpec::catalog("sym", {5}),          GroupSpec::catalog("alt", {6}),
        GroupSpec::catalog("cyclic", {12}),      GroupSpec::catalog("dihedral", {10}),
        GroupSpec::catalog("dihedral", {2}),     GroupSpec::catalog("dihedral", {4}),
        GroupSpec::catalog("quaternion", {16}),  GroupSpec::catalog("wreath_cyclic", {3, 1}),
        GroupSpec::catalog("wreath_cyclic", {2, 3}), GroupSpec::catalog("gl", {2, 3}),
        GroupSpec::catalog("sl", {2, 5}),        GroupSpec::catalog("gl", {3, 2}),
        GroupSpec::product({GroupSpec::catalog("cyclic", {4}), GroupSpec::catalog("sym", {4})}),
    };
    for (const auto& s : specs) {
        CAPTURE(s.label());
        REQUIRE(expected_order(s).has_value());
        CHECK(build(s).group->order() == *expected_order(s));
    }
    CHECK(build(GroupSpec::catalog("alt", {9})).group->order() == 181440);
    CHECK(build(GroupSpec::catalog("cyclic", {1})).group->order() == 1);
    CHECK(build(GroupSpec::catalog("wreath_cyclic", {3, 1})).group->order() == 81);
}

TEST_CASE("catalog parameter errors") {
    CHECK_THROWS_AS(build(GroupSpec::catalog("sym", {0})), InputError);
    CHECK_THROWS_AS(build(GroupSpec::catalog("quaternion", {12})), InputError);
    CHECK_THROWS_AS(build(GroupSpec::catalog("wreath_cyclic", {4, 1})), InputError);
    CHECK_THROWS_AS(build(GroupSpec::catalog("gl", {2, 4})), InputError);
    CHECK_THROWS_AS(build(GroupSpec::catalog("frobenius", {5})), InputError);
    Caps caps;
    caps.max_order = 1000;
    CHECK_THROWS_AS(build(GroupSpec::catalog("alt", {9}), caps), CapExceeded);
}

TEST_CASE("wreath structure") {
    auto w31 = build(GroupSpec::catalog("wreath_cyclic", {3, 1}));
    CHECK(wreath_structure(w31).derived.order() == 9);
    auto w32 = build(GroupSpec::catalog("wreath_cyclic", {3, 2}));
    CHECK(wreath_structure(w32).derived.order() == 81);
    auto w21 = build(GroupSpec::catalog("wreath_cyclic", {2, 1}));
    CHECK(wreath_structure(w21).derived.order() == 2);
    const auto s = wreath_structure(w32);
    const Group& g = *w32.group;
    CHECK(g.element_order(s.x) == 3);
    CHECK(g.conj(s.base_generators[0], s.x) == s.base_generators[1]);
    CHECK(g.conj(s.derived_generators[0], s.x) == s.derived_generators[1]);
    CHECK_THROWS_AS(wreath_structure(build(GroupSpec::catalog("sym", {4}))), InputError);
}

TEST_CASE("group spec documents") {
    auto doc = parse_document(R"({"catalog": {"name": "direct_product", "factors": [
        {"catalog": {"name": "cyclic", "params": [4]}}, {"catalog": {"name": "sym", "params": [4]}}]}})");
    auto spec = group_spec_from_json(doc);
    CHECK(build(spec).group->order() == 96);
    CHECK(to_json(spec) == doc);

    auto d8 = group_spec_from_json(parse_document(
        R"({"explicit": {"kind": "permutation", "degree": 4, "generators": [[2, 3, 4, 1], [4, 3, 2, 1]]}})"));
    CHECK(build(d8).group->order() == 8);

    auto m = group_spec_from_json(parse_document(
        R"({"explicit": {"kind": "matrix", "dimension": 2, "field": 3, "generators": [[[1, 1], [0, 1]], [[0, 1], [2, 0]]]}})"));
    CHECK(build(m).group->order() == 24);
}

TEST_CASE("malformed documents") {
    try {
        parse_document("{\"catalog\": ");
        FAIL("expected an error");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("line 1") != std::string::npos);
    }
    CHECK_THROWS_AS(group_spec_from_json(parse_document(R"({"catalog": {"params": [3]}})")), InputError);
    CHECK_THROWS_AS(group_spec_from_json(parse_document(R"({"explicit": {"kind": "permutation", "degree": 3,
        "generators": [[1, 1, 2]]}})")), InputError);
    CHECK_THROWS_AS(group_spec_from_json(parse_document(R"({"lie": {}})")), InputError);
    CHECK_THROWS_AS(read_document("/nonexistent/file.json"), InputError);
}

TEST_CASE("serialize round trip") {
    for (const auto& spec : {GroupSpec::catalog("dihedral", {12}), GroupSpec::catalog("sl", {2, 3})}) {
        auto g = build(spec).group;
        auto back = deserialize(serialize(*g));
        REQUIRE(back->order() == g->order());
        for (ElemId i = 0; i < g->order(); ++i)
            CHECK(back->element(i) == g->element(i));
    }
}
