#include "ff/catalog.hpp"
#include "ff/error.hpp"
#include "ff/theorems.hpp"

#include <doctest.h>

using namespace ff;

namespace {

FusionSystem realized(const GroupSpec& spec, unsigned p) { return fusion_of_group(build(spec).group, p); }
GroupSpec cat(const char* name, std::vector<long long> params) { return GroupSpec::catalog(name, std::move(params)); }
Subgroup whole(const GroupSpec& spec) { return Subgroup::whole(build(spec).group); }

} // namespace

TEST_CASE("helpers") {
    CHECK(tightest_n(1, 3) == 0);
    CHECK(tightest_n(2, 2) == 1);
    CHECK(tightest_n(3, 3) == 1);
    CHECK(tightest_n(4, 3) == 2);
    CHECK(tightest_n(5, 3) == 2);
    for (unsigned p : {3u, 5u, 7u, 11u, 13u})
        CHECK(exponent_sum_identity(p) == -static_cast<long long>(p));
}

TEST_CASE("vacuity discipline") {
    VerificationReport r;
    r.hypotheses.push_back({"h", false, ""});
    r.checks.push_back({"c", true, ""});
    r.settle();
    CHECK(r.outcome == Outcome::vacuous);
    r.hypotheses[0].holds = true;
    r.settle();
    CHECK(r.outcome == Outcome::pass);
    r.checks.push_back({"d", false, ""});
    r.settle();
    CHECK(r.outcome == Outcome::fail);
}

TEST_CASE("lemma goldcent") {
    CHECK(verify_goldcent(whole(cat("dihedral", {8})), 1).outcome == Outcome::pass);
    CHECK(verify_goldcent(whole(cat("wreath_cyclic", {3, 1})), 1).outcome == Outcome::pass);
    CHECK(verify_goldcent(whole(cat("wreath_cyclic", {3, 2})), 1).outcome == Outcome::vacuous);
    CHECK(verify_goldcent(whole(cat("wreath_cyclic", {3, 2})), 2).outcome == Outcome::pass);
}

TEST_CASE("lemma goldj") {
    CHECK(verify_goldj(whole(cat("dihedral", {8}))).outcome == Outcome::pass);
    CHECK(verify_goldj(whole(cat("wreath_cyclic", {3, 1}))).outcome == Outcome::pass);
    CHECK(verify_goldj(whole(cat("quaternion", {32}))).outcome == Outcome::pass);
}

TEST_CASE("equivalent conditions for normality") {
    auto s = realized(cat("sym", {4}), 2);
    CHECK(verify_equivnorm(s, s.context().top()).outcome == Outcome::pass);
    CHECK(verify_equivnorm(s, op_subgroup(s)).outcome == Outcome::pass);
    auto a = realized(cat("alt", {6}), 2);
    const auto r = verify_equivnorm(a, a.context().center(a.context().top()));
    CHECK(r.outcome == Outcome::pass);
    CHECK(r.checks.front().detail == "a=false b=false c=false");
    CHECK(verify_equivnorm(a).outcome == Outcome::pass);
}

TEST_CASE("equivnorm refuses non-saturated systems") {
    auto inst = fusion_from_json(parse_document(R"({"generated": {
        "p_group": {"catalog": {"name": "direct_product", "factors": [
            {"catalog": {"name": "cyclic", "params": [3]}}, {"catalog": {"name": "cyclic", "params": [3]}}]}},
        "automorphisms": [{"subgroup_generators": [[2, 3, 1, 4, 5, 6]], "maps": [[[3, 1, 2, 4, 5, 6]]]}]}})"));
    CHECK(verify_equivnorm(inst.fusion).outcome == Outcome::vacuous);
    CHECK(verify_saturation(inst.fusion).outcome == Outcome::fail);
    CHECK(verify_saturation(inst.fusion).counterexample.has_value());
}

TEST_CASE("characteristic subfunctors of the center") {
    auto p = realized(cat("dihedral", {8}), 2);
    CHECK(verify_poschar(p, {CharFunctor::Tag::center, 0}).outcome == Outcome::pass);
    auto a = realized(cat("alt", {6}), 2);
    CHECK(verify_poschar(a, {CharFunctor::Tag::agemo_center, 1}).outcome == Outcome::pass);
    auto a9 = realized(cat("alt", {9}), 3);
    CHECK(verify_poschar(a9, {CharFunctor::Tag::agemo_center, 1}).outcome == Outcome::pass);
    CHECK(verify_poschar(a9, {CharFunctor::Tag::omega_center, 1}).outcome != Outcome::fail);
}

TEST_CASE("theorem norm") {
    auto a = realized(cat("alt", {6}), 2);
    CHECK(verify_theorem_norm(a, 1).outcome == Outcome::pass);
    CHECK(verify_theorem_norm(a, 0).outcome == Outcome::vacuous);
    auto a9 = realized(cat("alt", {9}), 3);
    CHECK(verify_theorem_norm(a9, 1).outcome == Outcome::pass);
    auto w = realized(cat("wreath_cyclic", {3, 2}), 3);
    CHECK(verify_theorem_norm(w, 2).outcome == Outcome::pass);
}

TEST_CASE("theorem main and the exponent corollary") {
    auto a = realized(cat("alt", {6}), 2);
    CHECK(verify_theorem_main(a, 1).outcome == Outcome::pass);
    CHECK(verify_corollary_exponent(a, 1).outcome == Outcome::pass);
    auto a9 = realized(cat("alt", {9}), 3);
    const auto r = verify_theorem_main(a9, 1);
    CHECK(r.outcome == Outcome::pass);
    CHECK(r.checks.front().detail == "exp(Z(P)) = 3, p^n = 3");
    CHECK(verify_corollary_exponent(a9, 1).outcome == Outcome::pass);
    auto p = realized(cat("dihedral", {8}), 2);
    CHECK(verify_theorem_main(p, 1).outcome == Outcome::vacuous);
}

TEST_CASE("factorization theorem") {
    for (auto f : {realized(cat("dihedral", {8}), 2), realized(cat("sym", {4}), 2), realized(cat("alt", {6}), 2),
                   realized(GroupSpec::product({cat("cyclic", {4}), cat("sym", {4})}), 2)}) {
        const auto r = verify_theorem_fact(f);
        CHECK(r.outcome == Outcome::pass);
    }
}

TEST_CASE("Frattini argument") {
    auto s = realized(cat("sym", {4}), 2);
    for (auto q : s.subgroups())
        if (is_normal(s, q))
            CHECK(verify_frattini(s, q).outcome == Outcome::pass);
    auto p = realized(cat("dihedral", {8}), 2);
    CHECK(verify_frattini(p, p.context().center(p.context().top())).outcome == Outcome::pass);
    CHECK(verify_frattini(p, p.context().top()).outcome == Outcome::pass);
    auto a = realized(cat("alt", {6}), 2);
    CHECK(verify_frattini(a, a.context().center(a.context().top())).outcome == Outcome::vacuous);
}

TEST_CASE("sharpness example") {
    auto a9 = realized(cat("alt", {9}), 3);
    const auto r = verify_example_sharpness(3, 1, &a9);
    CHECK(r.outcome == Outcome::pass);
    CHECK(r.checks.size() >= 8);
    CHECK(verify_example_sharpness(3, 2).outcome == Outcome::pass);
    CHECK(verify_example_sharpness(2, 1).outcome == Outcome::pass);
    CHECK(verify_example_sharpness(2, 2).outcome == Outcome::pass);
}

TEST_CASE("group version of the main theorem") {
    CHECK(verify_theorem_maingrp(realized(cat("alt", {6}), 2), 1).outcome == Outcome::pass);
    CHECK(verify_theorem_maingrp(realized(cat("alt", {9}), 3), 1).outcome == Outcome::pass);
    // V4 is strongly closed in S4.
    CHECK(verify_theorem_maingrp(realized(cat("sym", {4}), 2), 1).outcome == Outcome::vacuous);
}

TEST_CASE("reports serialize deterministically") {
    auto a = realized(cat("alt", {6}), 2);
    const auto r1 = verify_theorem_fact(a);
    const auto r2 = verify_theorem_fact(a);
    CHECK(to_json(r1).dump() == to_json(r2).dump());
    CHECK_FALSE(to_json(r1).contains("elapsed_ms"));
    CHECK(to_json(r1, true).contains("elapsed_ms"));
    const auto doc = report_document({r1});
    CHECK(doc["schema"] == "fusion-forge/1");
    CHECK(doc["summary"]["pass"] == 1);
}

TEST_CASE("corpus runner") {
    CHECK(corpus_run({}).empty());
    auto entries = corpus_from_json(parse_document(R"([
        {"id": "ok", "group": {"catalog": {"name": "sym", "params": [4]}}, "prime": 2, "verifiers": ["saturation"]},
        {"id": "bad", "group": {"catalog": {"name": "sym", "params": [4]}}, "prime": 2,
         "sylow_generators": [[2, 1, 3, 4]], "verifiers": ["saturation"]}])"));
    const auto reports = corpus_run(entries);
    REQUIRE(reports.size() == 2);
    CHECK(reports[0].outcome == Outcome::pass);
    CHECK(reports[1].outcome == Outcome::error);
    CHECK(reports[1].error_kind == "input");
    CHECK_THROWS_AS(corpus_from_json(parse_document(R"([{"group": {"catalog": {"name": "sym", "params": [4]}},
        "prime": 2, "verifiers": ["nonsense"]}])")), InputError);
}

TEST_CASE("default corpus passes") {
    const auto reports = corpus_run(default_corpus());
    const auto s = summarize(reports);
    CHECK(s.fail == 0);
    CHECK(s.error == 0);
    CHECK(s.pass > 100);
    for (const auto& r : reports)
        if (r.outcome == Outcome::pass)
            CHECK(r.hypotheses_hold());
}
