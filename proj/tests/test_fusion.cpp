#include "ff/catalog.hpp"
#include "ff/error.hpp"
#include "ff/fusion.hpp"
#include "ff/theorems.hpp"

#include <doctest.h>

using namespace ff;

namespace {

FusionSystem realized(const GroupSpec& spec, unsigned p) { return fusion_of_group(build(spec).group, p); }

FusionSystem sym4() { return realized(GroupSpec::catalog("sym", {4}), 2); }
FusionSystem alt6() { return realized(GroupSpec::catalog("alt", {6}), 2); }

/// Lattice id of the subgroup generated by permutations given as cycles.
SubgroupId sub(const FusionSystem& f, std::size_t degree, std::vector<std::vector<std::vector<int>>> gens) {
    const auto& ctx = f.context();
    std::vector<ElemId> ids;
    for (const auto& cycles : gens)
        ids.push_back(ctx.group()->index_of(GroupElement(Permutation::from_cycles(degree, cycles))));
    return ctx.id_of(closure(ctx.group(), ids));
}

FusionSystem own(const FusionSystem& f) { return generate(f.context_ptr(), f.base(), {}); }

FusionSystem c3xc3_nonsaturated() {
    return fusion_from_json(parse_document(R"({"generated": {
        "p_group": {"catalog": {"name": "direct_product", "factors": [
            {"catalog": {"name": "cyclic", "params": [3]}}, {"catalog": {"name": "cyclic", "params": [3]}}]}},
        "automorphisms": [{"subgroup_generators": [[2, 3, 1, 4, 5, 6]], "maps": [[[3, 1, 2, 4, 5, 6]]]}]}})"))
        .fusion;
}

} // namespace

TEST_CASE("group fusion systems") {
    auto f = sym4();
    const auto& ctx = f.context();
    CHECK(f.underlying().order() == 8);
    CHECK(f.group_realized());
    const SubgroupId v4 = sub(f, 4, {{{1, 2}, {3, 4}}, {{1, 3}, {2, 4}}});
    CHECK(automorphisms(f, v4).size() == 6);

    // Every morphism is conjugation by its witness.
    const Group& amb = *ctx.ambient();
    for (auto q : f.subgroups())
        for (const auto& m : f.homs(q)) {
            REQUIRE(m.witness.has_value());
            const auto& els = ctx[q].elements();
            for (std::size_t k = 0; k < els.size(); ++k)
                CHECK(amb.conj(ctx.to_ambient(els[k]), *m.witness) == ctx.to_ambient(m.table[k]));
        }

    // Transpositions and double transpositions are not fused.
    const SubgroupId t = sub(f, 4, {{{1, 2}}});
    const SubgroupId d = sub(f, 4, {{{1, 2}, {3, 4}}});
    CHECK(hom_set(f, t, d).empty());

    CHECK_THROWS_AS(fusion_of_group(Subgroup::whole(build(GroupSpec::catalog("sym", {4})).group),
                                    Subgroup::trivial(build(GroupSpec::catalog("sym", {4})).group)),
                    InputError);
}

TEST_CASE("inner morphisms are always present") {
    for (auto f : {sym4(), alt6(), realized(GroupSpec::catalog("gl", {3, 2}), 2)}) {
        const auto& ctx = f.context();
        for (auto q : f.subgroups())
            for (const auto& m : inner_homs(ctx, f.base(), q))
                CHECK(std::binary_search(f.homs(q).begin(), f.homs(q).end(), m));
    }
}

TEST_CASE("F_P(P) consists of inner morphisms") {
    auto f = realized(GroupSpec::catalog("dihedral", {8}), 2);
    const auto& ctx = f.context();
    for (auto q : f.subgroups()) {
        CHECK(f.homs(q) == inner_homs(ctx, f.base(), q));
        CHECK(is_fully_normalized(f, q) ==
              [&] {
                  for (auto x : f_class(f, q))
                      if (ctx[ctx.normalizer(x)].order() > ctx[ctx.normalizer(q)].order())
                          return false;
                  return true;
              }());
    }
    CHECK(op_subgroup(f) == ctx.top());
    CHECK(center_of_fusion(f) == ctx.center(ctx.top()));
    CHECK(alperin_family(f) == std::vector<SubgroupId>{ctx.top()});
    CHECK(check_saturation(f).saturated());
}

TEST_CASE("fully normalized, centric and radical") {
    auto f = alt6();
    const auto& ctx = f.context();
    CHECK(is_fully_normalized(f, ctx.top()));
    CHECK(is_centric(f, ctx.top()));
    CHECK_FALSE(is_centric(f, ctx.center(ctx.top())));
    for (auto q : f.subgroups())
        if (ctx[q].order() == 4 && exponent(ctx[q]) == 2)
            CHECK(is_fully_normalized(f, q) == (ctx[ctx.normalizer(q)].order() == 8));

    auto s = sym4();
    const SubgroupId v4 = sub(s, 4, {{{1, 2}, {3, 4}}, {{1, 3}, {2, 4}}});
    CHECK(is_centric(s, v4));
    CHECK(is_radical(s, v4));
    CHECK(out_profile(s, v4) == std::pair<std::size_t, std::size_t>{6, 1});
    CHECK(out_profile(s, s.context().top()).first == 1);
}

TEST_CASE("N_phi") {
    auto f = alt6();
    const auto& ctx = f.context();
    for (auto q : f.subgroups()) {
        const SubgroupId qc = ctx.join(q, ctx.centralizer(q));
        for (const auto& phi : f.homs(q)) {
            const auto data = n_phi(f, phi);
            CHECK(ctx.contains(data.n_phi, qc));
            CHECK(ctx.contains(ctx.normalizer(q), data.n_phi));
            if (phi.image == ctx.top() || phi.table == ctx[q].elements())
                CHECK(data.n_phi == ctx.normalizer(q));
        }
    }
}

TEST_CASE("saturation") {
    for (auto f : {sym4(), alt6(), realized(GroupSpec::catalog("alt", {9}), 3),
                   realized(GroupSpec::catalog("wreath_cyclic", {2, 2}), 2)}) {
        const auto rep = check_saturation(f);
        CHECK(rep.saturated());
        CHECK(check_saturation(f, false).saturated());
    }
    auto bad = c3xc3_nonsaturated();
    const auto rep = check_saturation(bad);
    CHECK(rep.sylow_axiom);
    CHECK_FALSE(rep.extension_axiom);
    REQUIRE(rep.extension_witness.has_value());
    CHECK(rep.extension_witness->n_phi == bad.context().top());
    CHECK_FALSE(check_saturation(bad, false).saturated());
}

TEST_CASE("subsystems") {
    auto f = sym4();
    const auto& ctx = f.context();
    const SubgroupId top = ctx.top();
    const auto n = normalizer_system(f, top);
    CHECK(automorphisms(n, top) == automorphisms(f, top));
    CHECK(centralizer_system(f, ctx.center(top)).base() == top);
    const SubgroupId v4 = sub(f, 4, {{{1, 2}, {3, 4}}, {{1, 3}, {2, 4}}});
    CHECK(same_hom_sets(normalizer_system(f, v4), f));
    CHECK(check_saturation(normalizer_system(f, v4)).saturated());
    CHECK(np_cf(f, v4).base() == top);

    auto a = alt6();
    for (auto q : a.subgroups())
        if (!is_fully_normalized(a, q)) {
            CHECK_THROWS_AS(normalizer_system(a, q), PreconditionError);
            break;
        }
}

TEST_CASE("normalizer subsystems are saturated") {
    for (auto f : {alt6(), realized(GroupSpec::catalog("sym", {6}), 2)})
        for (auto q : f.subgroups())
            if (is_fully_normalized(f, q))
                CHECK(check_saturation(normalizer_system(f, q)).saturated());
}

TEST_CASE("closure properties") {
    auto f = sym4();
    const auto& ctx = f.context();
    const SubgroupId top = ctx.top();
    CHECK(is_weakly_closed(f, top));
    CHECK(is_strongly_closed(f, top));
    // D8 is strongly closed but not normal: Aut_F(V4) has order 6.
    CHECK_FALSE(is_normal(f, top));
    const SubgroupId v4 = sub(f, 4, {{{1, 2}, {3, 4}}, {{1, 3}, {2, 4}}});
    CHECK(is_strongly_closed(f, v4));
    CHECK(is_normal(f, v4));

    auto a = alt6();
    const SubgroupId z = a.context().center(a.context().top());
    // Baseline: the central involution of D8 is fused to non-central ones.
    CHECK_FALSE(is_weakly_closed(a, z));
    CHECK_FALSE(is_strongly_closed(a, z));
    CHECK_FALSE(is_normal(a, z));
}

TEST_CASE("O_p(F) and Z(F)") {
    auto s = sym4();
    CHECK(s.context()[op_subgroup(s)].order() == 4);
    CHECK(center_of_fusion(s) == 0);
    auto a = alt6();
    CHECK(op_subgroup(a) == 0);
    CHECK(center_of_fusion(a) == 0);
    auto a9 = realized(GroupSpec::catalog("alt", {9}), 3);
    CHECK(op_subgroup(a9) == 0);
    auto c = realized(GroupSpec::product({GroupSpec::catalog("cyclic", {4}), GroupSpec::catalog("sym", {4})}), 2);
    CHECK(c.context()[op_subgroup(c)].order() == 16);
    CHECK(c.context()[center_of_fusion(c)].order() == 4);
    for (auto f : {s, a, a9, c})
        CHECK(center_of_fusion(f) == center_by_fixed_points(f));
}

TEST_CASE("Alperin family") {
    auto s = sym4();
    const auto& ctx = s.context();
    const SubgroupId v4 = sub(s, 4, {{{1, 2}, {3, 4}}, {{1, 3}, {2, 4}}});
    CHECK(alperin_family(s) == std::vector<SubgroupId>{v4, ctx.top()});
    auto a = alt6();
    const auto fam = alperin_family(a);
    REQUIRE(fam.size() == 3);
    CHECK(a.context()[fam[0]].order() == 4);
    CHECK(a.context()[fam[1]].order() == 4);
    CHECK(fam[2] == a.context().top());
}

TEST_CASE("generation") {
    auto s = sym4();
    const FusionSystem parts[] = {s};
    CHECK(equals(generate(s.context_ptr(), s.base(), parts), s));
    auto d8 = realized(GroupSpec::catalog("dihedral", {8}), 2);
    CHECK(same_hom_sets(own(d8), d8));
    for (auto f : {s, alt6(), realized(GroupSpec::catalog("alt", {9}), 3)}) {
        std::vector<Morphism> maps;
        for (auto q : alperin_family(f))
            for (const auto& m : automorphisms(f, q))
                maps.push_back(m);
        CHECK(same_hom_sets(generate(f.context_ptr(), f.base(), {}, maps), f));
    }
}

TEST_CASE("equality") {
    auto s = sym4();
    CHECK(equals(s, s));
    CHECK_FALSE(equals(s, own(s)));
    CHECK(equals(s, own(s)) == same_hom_sets(s, own(s)));
    // D8 inside A6 and inside S4 sit in different groups, so compare on one context.
    auto a = alt6();
    auto d8_in_a6 = own(a);
    CHECK_FALSE(equals(a, d8_in_a6));
    CHECK_FALSE(same_hom_sets(a, d8_in_a6));
}

TEST_CASE("morphism construction") {
    auto bad = c3xc3_nonsaturated();
    const auto& ctx = bad.context();
    const SubgroupId top = ctx.top();
    const auto& g = ctx[top].generators();
    std::vector<ElemId> images(g.begin(), g.end());
    images[0] = ctx.group()->identity();
    CHECK_THROWS_AS(morphism_from_generators(ctx, top, g, images), InputError);
    const auto id = morphism_from_generators(ctx, top, g, g);
    CHECK(id == identity_morphism(ctx, top));
    CHECK(compose(ctx, id, inverse(ctx, id)) == id);
}
