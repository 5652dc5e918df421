#include "ff/catalog.hpp"
#include "ff/error.hpp"
#include "ff/structure.hpp"

#include <doctest.h>

#include <random>

using namespace ff;

namespace {

BuiltGroup make(const char* name, std::vector<long long> params) { return build(GroupSpec::catalog(name, std::move(params))); }

ElemId elem(const GroupPtr& g, std::size_t degree, std::vector<std::vector<int>> cycles) {
    return g->index_of(GroupElement(Permutation::from_cycles(degree, cycles)));
}

Subgroup gen(const GroupPtr& g, std::vector<ElemId> gens) { return closure(g, gens); }

} // namespace

TEST_CASE("permutations act on the right") {
    auto a = Permutation::from_cycles(3, {{1, 2}});
    auto b = Permutation::from_cycles(3, {{2, 3}});
    // (a*b)(i) = b(a(i)): 1 -> 2 -> 3.
    CHECK((a * b)(0) == 2);
    CHECK((a * b).cycle_string() == "(1,3,2)");
    CHECK((a * a.inverse()).is_identity());
    CHECK(Permutation::identity(4).cycle_string() == "()");
    CHECK_THROWS_AS(Permutation::from_one_based({1, 1, 2}), InputError);
    CHECK_THROWS_AS(Permutation::from_cycles(3, {{1, 4}}), InputError);
}

TEST_CASE("matrices over prime fields") {
    Matrix m(3, 2, {1, 1, 0, 1});
    CHECK(m.determinant() == 1);
    CHECK((m * m * m).is_identity());
    CHECK((m * m.inverse()).is_identity());
    CHECK_THROWS_AS(Matrix(3, 2, {1, 1, 1, 1}), InputError);
    CHECK_THROWS_AS(Matrix(4, 2, {1, 0, 0, 1}), InputError);
}

TEST_CASE("group generation and the multiplication table") {
    auto s4 = make("sym", {4}).group;
    CHECK(s4->order() == 24);
    CHECK(s4->has_table());
    const ElemId a = elem(s4, 4, {{1, 2, 3}});
    const ElemId t = elem(s4, 4, {{1, 2}});
    CHECK(s4->element(s4->mul(a, t)) == s4->element(a) * s4->element(t));
    CHECK(s4->element(s4->conj(a, t)) == s4->element(t).inverse() * s4->element(a) * s4->element(t));
    CHECK(s4->element_order(a) == 3);
    CHECK(s4->pow(a, 3) == s4->identity());
    // Element ids do not depend on the generators used.
    auto again = Group::generate(s4->shape(), {s4->element(t), s4->element(elem(s4, 4, {{1, 2, 3, 4}}))});
    for (ElemId i = 0; i < s4->order(); ++i)
        CHECK(again->element(i) == s4->element(i));
}

TEST_CASE("closure") {
    auto s3 = make("sym", {3}).group;
    CHECK(gen(s3, {elem(s3, 3, {{1, 2}}), elem(s3, 3, {{1, 2, 3}})}).order() == 6);
    CHECK(gen(s3, {s3->identity()}).order() == 1);
    auto w = make("wreath_cyclic", {3, 1});
    CHECK(gen(w.group, w.wreath->base).order() == 27);
}

TEST_CASE("centralizers and normalizers") {
    auto d8 = make("dihedral", {8}).group;
    const Subgroup p = Subgroup::whole(d8);
    CHECK(centralizer(p, center(p)) == p);
    auto s4 = make("sym", {4}).group;
    CHECK(normalizer(Subgroup::whole(s4), gen(s4, {elem(s4, 4, {{1, 2, 3}})})).order() == 6);
    auto w = make("wreath_cyclic", {3, 1});
    const Subgroup base = gen(w.group, w.wreath->base);
    CHECK(centralizer(Subgroup::whole(w.group), base) == base);
}

TEST_CASE("central series and class") {
    CHECK(nilpotence_class(Subgroup::whole(make("dihedral", {8}).group)) == 2);
    CHECK(nilpotence_class(Subgroup::whole(make("wreath_cyclic", {3, 1}).group)) == 3);
    CHECK(nilpotence_class(Subgroup::whole(make("wreath_cyclic", {3, 2}).group)) == 5);
    CHECK(nilpotence_class(Subgroup::whole(make("cyclic", {9}).group)) == 1);
    CHECK_THROWS_AS(nilpotence_class(Subgroup::whole(make("sym", {3}).group)), InputError);
    auto data = central_series(Subgroup::whole(make("quaternion", {16}).group));
    CHECK(data.upper.size() == data.lower.size());
    CHECK(data.nilpotence_class == 3u);
}

TEST_CASE("agemo, omega and exponent") {
    auto c9 = Subgroup::whole(make("cyclic", {9}).group);
    CHECK(agemo(c9, 1).order() == 3);
    CHECK(agemo(c9, 0) == c9);
    CHECK(omega(c9, 0).order() == 1);
    auto c9c3 = Subgroup::whole(build(GroupSpec::product({GroupSpec::catalog("cyclic", {9}),
                                                           GroupSpec::catalog("cyclic", {3})})).group);
    CHECK(omega(c9c3, 1).order() == 9);
    CHECK(exponent(omega(c9c3, 1)) == 3);
    CHECK(exponent(center(Subgroup::whole(make("wreath_cyclic", {3, 2}).group))) == 9);
    CHECK(exponent(center(Subgroup::whole(make("wreath_cyclic", {2, 2}).group))) == 4);
    CHECK(exponent(Subgroup::whole(make("dihedral", {4}).group)) == 2);
    CHECK(exponent(Subgroup::whole(make("quaternion", {8}).group)) == 4);
}

TEST_CASE("agemo and omega are characteristic") {
    auto w = make("wreath_cyclic", {2, 2});
    const Subgroup p = Subgroup::whole(w.group);
    const Group& g = *w.group;
    for (auto x : p.elements())
        for (unsigned n = 0; n < 3; ++n) {
            CHECK(is_normal_in(agemo(p, n), p));
            CHECK(is_normal_in(omega(p, n), p));
            CHECK(conjugate(agemo(p, n), x) == agemo(p, n));
        }
    (void)g;
}

TEST_CASE("iterated commutators") {
    auto w2 = make("wreath_cyclic", {3, 2});
    auto s2 = wreath_structure(w2);
    CHECK(iterated_commutator(s2.derived, s2.x, 2).order() == 9);
    CHECK(iterated_commutator(s2.derived, s2.x, 2) == omega(s2.derived, 1));
    auto w1 = make("wreath_cyclic", {3, 1});
    auto s1 = wreath_structure(w1);
    CHECK(iterated_commutator(s1.derived, s1.x, 2).is_trivial());
    CHECK(iterated_commutator(s1.derived, w1.group->identity(), 1).is_trivial());
    CHECK_THROWS_AS(iterated_commutator(s1.derived, s1.x, 0), InputError);
}

TEST_CASE("Thompson subgroup") {
    auto d8 = Subgroup::whole(make("dihedral", {8}).group);
    CHECK(thompson_subgroup(d8) == d8);
    auto w = make("wreath_cyclic", {3, 1});
    CHECK(thompson_subgroup(Subgroup::whole(w.group)) == gen(w.group, w.wreath->base));
    auto c9 = Subgroup::whole(make("cyclic", {9}).group);
    CHECK(thompson_subgroup(c9) == c9);
}

TEST_CASE("subgroup lattices") {
    CHECK(all_subgroups(Subgroup::whole(make("cyclic", {5}).group)).size() == 2);
    CHECK(all_subgroups(Subgroup::whole(make("dihedral", {8}).group)).size() == 10);
    CHECK(all_subgroups(Subgroup::whole(make("quaternion", {8}).group)).size() == 6);
    auto c3c3 = build(GroupSpec::product({GroupSpec::catalog("cyclic", {3}), GroupSpec::catalog("cyclic", {3})}));
    CHECK(all_subgroups(Subgroup::whole(c3c3.group)).size() == 6);
    CHECK(all_subgroups(Subgroup::whole(make("wreath_cyclic", {3, 1}).group)).size() == 50);
    CHECK(all_subgroups(Subgroup::whole(make("wreath_cyclic", {2, 2}).group)).size() == 34);

    SubgroupLattice lat(Subgroup::whole(make("dihedral", {16}).group));
    CHECK(lat[0].is_trivial());
    CHECK(lat.top().order() == 16);
    for (SubgroupId i = 0; i + 1 < lat.size(); ++i) {
        CHECK(lat[i] < lat[i + 1]);
        for (auto up : lat.covers_above(i))
            CHECK(lat[up].order() == 2 * lat[i].order());
    }
}

TEST_CASE("random closures appear in the lattice") {
    auto w = make("wreath_cyclic", {2, 2});
    const Subgroup p = Subgroup::whole(w.group);
    SubgroupLattice lat(p);
    std::mt19937 rng(7);
    std::uniform_int_distribution<ElemId> pick(0, static_cast<ElemId>(p.order() - 1));
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<ElemId> gens{pick(rng), pick(rng)};
        const Subgroup h = closure(w.group, gens);
        REQUIRE(lat.find(h).has_value());
        CHECK(p.order() % h.order() == 0);
    }
}

TEST_CASE("lattice cap") {
    Caps caps;
    caps.max_lattice_order = 64;
    auto big = build(GroupSpec::catalog("wreath_cyclic", {2, 3}), caps);
    CHECK_THROWS_AS(SubgroupLattice(Subgroup::whole(big.group)), CapExceeded);
}

TEST_CASE("Sylow subgroups") {
    auto a9 = Subgroup::whole(make("alt", {9}).group);
    const Subgroup p = sylow(a9, 3);
    CHECK(p.order() == 81);
    CHECK(nilpotence_class(p) == 3);
    CHECK(center(p).order() == 3);
    CHECK(exponent(p) == 9);
    CHECK(sylow(Subgroup::whole(make("sym", {4}).group), 2).order() == 8);
    auto c6 = Subgroup::whole(make("cyclic", {6}).group);
    CHECK(sylow(c6, 3).order() == 3);
    CHECK_THROWS_AS(sylow(c6, 5), InputError);
    CHECK_THROWS_AS(sylow(c6, 4), InputError);
}

TEST_CASE("subgroup orbits") {
    auto s4g = make("sym", {4}).group;
    const Subgroup s4 = Subgroup::whole(s4g);
    auto orbit = subgroup_orbit(s4, gen(s4g, {elem(s4g, 4, {{1, 2, 3}})}));
    CHECK(orbit.members.size() == 4);
    for (std::size_t i = 0; i < orbit.members.size(); ++i)
        CHECK(conjugate(orbit.members[0], orbit.witnesses[i]) == orbit.members[i]);
    CHECK(orbit.stabilizer(s4g).order() == 6);

    const Subgroup p = sylow(s4, 2);
    CHECK(subgroup_orbit(s4, p).members.size() == 3);
    CHECK(subgroup_orbit(p, center(p)).members.size() == 1);
}

TEST_CASE("Thompson ordering") {
    auto d8g = make("dihedral", {8}).group;
    const Subgroup d8 = Subgroup::whole(d8g);
    const Subgroup z = center(d8);
    Subgroup klein;
    for (const auto& h : all_subgroups(d8))
        if (h.order() == 4 && exponent(h) == 2)
            klein = h;
    CHECK(thompson_compare(d8, z, klein) == ThompsonOrder::less);
    CHECK(thompson_compare(d8, klein, klein) == ThompsonOrder::equal_rank);
    CHECK(thompson_compare(d8, klein, d8) == ThompsonOrder::less);
    CHECK(thompson_compare(d8, d8, z) == ThompsonOrder::greater);
}

TEST_CASE("Lagrange and normality invariants") {
    auto q16 = Subgroup::whole(make("quaternion", {16}).group);
    for (const auto& h : all_subgroups(q16)) {
        CHECK(q16.order() % h.order() == 0);
        CHECK(h.is_subgroup_of(normalizer(q16, h)));
        CHECK(centralizer(q16, h).is_subgroup_of(normalizer(q16, h)));
        CHECK(is_normal_in(h, normalizer(q16, h)));
    }
    CHECK(derived_subgroup(q16).order() == 4);
}
