#include "ff/fusion.hpp"

#include "ff/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_set>

namespace ff {

namespace {

using TableSet = std::unordered_set<std::vector<ElemId>, TableHash>;

/// Aut(Q) elements as permutations of Q's element positions.
std::vector<std::uint16_t> position_perm(const PGroupContext& ctx, const Morphism& m) {
    const Subgroup& img = ctx[m.image];
    std::vector<std::uint16_t> perm(m.table.size());
    for (std::size_t k = 0; k < perm.size(); ++k)
        perm[k] = static_cast<std::uint16_t>(img.position(m.table[k]));
    return perm;
}

/// S-conjugacy class representatives (least id) of subgroups of `base`, ascending.
std::vector<SubgroupId> class_of_under(const PGroupContext& ctx, SubgroupId base, SubgroupId q) {
    std::vector<SubgroupId> orbit{q};
    std::unordered_set<SubgroupId> seen{q};
    const auto& gens = ctx[base].generators();
    for (std::size_t head = 0; head < orbit.size(); ++head)
        for (auto g : gens) {
            SubgroupId c = ctx.conjugate(orbit[head], g);
            if (seen.insert(c).second)
                orbit.push_back(c);
        }
    std::sort(orbit.begin(), orbit.end());
    return orbit;
}

} // namespace

std::vector<Morphism> hom_set(const FusionSystem& f, SubgroupId q, SubgroupId r) {
    std::vector<Morphism> out;
    for (const auto& m : f.homs(q))
        if (f.context().contains(r, m.image))
            out.push_back(m);
    return out;
}

std::vector<Morphism> automorphisms(const FusionSystem& f, SubgroupId q) {
    std::vector<Morphism> out;
    for (const auto& m : f.homs(q))
        if (m.image == q)
            out.push_back(m);
    return out;
}

std::vector<SubgroupId> f_class(const FusionSystem& f, SubgroupId q) {
    std::vector<SubgroupId> out;
    for (const auto& m : f.homs(q))
        out.push_back(m.image);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool is_fully_normalized(const FusionSystem& f, SubgroupId q) {
    const auto& ctx = f.context();
    const auto mine = ctx[ctx.normalizer_in(f.base(), q)].order();
    for (auto x : f_class(f, q))
        if (ctx[ctx.normalizer_in(f.base(), x)].order() > mine)
            return false;
    return true;
}

bool is_fully_centralized(const FusionSystem& f, SubgroupId q) {
    const auto& ctx = f.context();
    const auto mine = ctx[ctx.centralizer_in(f.base(), q)].order();
    for (auto x : f_class(f, q))
        if (ctx[ctx.centralizer_in(f.base(), x)].order() > mine)
            return false;
    return true;
}

bool is_centric(const FusionSystem& f, SubgroupId q) {
    const auto& ctx = f.context();
    for (auto x : f_class(f, q))
        if (!ctx.contains(x, ctx.centralizer_in(f.base(), x)))
            return false;
    return true;
}

std::pair<std::size_t, std::size_t> out_profile(const FusionSystem& f, SubgroupId q) {
    const auto& ctx = f.context();
    const auto autos = automorphisms(f, q);
    const auto inner = inner_homs(ctx, q, q);
    const unsigned p = f.prime();
    const std::size_t degree = ctx[q].order();
    const std::size_t out_order = autos.size() / inner.size();
    if (out_order % p != 0)
        return {out_order, 1};

    ElementShape shape{ElementKind::permutation, static_cast<unsigned>(degree), 0};
    std::vector<GroupElement> gens;
    for (const auto& m : autos)
        gens.emplace_back(Permutation(position_perm(ctx, m)));
    auto a = Group::generate(shape, std::move(gens));
    if (a->order() != autos.size())
        throw std::logic_error("Aut_F(Q) is not closed under composition");

    auto locate = [&](const Morphism& m) { return *a->find(GroupElement(Permutation(position_perm(ctx, m)))); };
    std::vector<ElemId> inner_ids;
    for (const auto& m : inner)
        inner_ids.push_back(locate(m));
    Subgroup whole = Subgroup::whole(a);
    Subgroup inn(a, std::move(inner_ids));
    // The preimage of O_p(A/I) is the core in A of T.I for a Sylow p-subgroup T.
    Subgroup ti = join(sylow(whole, p), inn);
    SubgroupOrbit orbit = subgroup_orbit(whole, ti);
    Subgroup core = ti;
    for (const auto& member : orbit.members)
        core = intersection(core, member);
    return {out_order, core.order() / inn.order()};
}

bool is_radical(const FusionSystem& f, SubgroupId q) { return out_profile(f, q).second == 1; }

namespace {

TableSet inner_tables(const FusionSystem& f, SubgroupId q) {
    TableSet out;
    for (const auto& m : inner_homs(f.context(), f.base(), q))
        out.insert(m.table);
    return out;
}

SubgroupId n_phi_with(const FusionSystem& f, const Morphism& phi, const TableSet& aut_s) {
    const auto& ctx = f.context();
    const Group& g = *ctx.group();
    const Subgroup& src = ctx[phi.source];
    const Subgroup& img = ctx[phi.image];
    if (src.order() != img.order())
        throw PreconditionError("N_phi needs an isomorphism");
    // phi^-1 as a table on image positions.
    std::vector<ElemId> back(img.order());
    for (std::size_t k = 0; k < phi.table.size(); ++k)
        back[static_cast<std::size_t>(img.position(phi.table[k]))] = src.elements()[k];

    // N_phi contains Q C_S(Q), so one test per coset decides the whole coset.
    const SubgroupId qc = ctx.join(phi.source, ctx.centralizer_in(f.base(), phi.source));
    const Subgroup& sub = ctx[qc];
    std::vector<ElemId> members = sub.elements();
    const Subgroup& n = ctx[ctx.normalizer_in(f.base(), phi.source)];
    std::vector<char> seen(g.order(), 0);
    for (auto z : sub.elements())
        seen[z] = 1;
    std::vector<ElemId> t(img.order());
    for (auto x : n.elements()) {
        if (seen[x])
            continue;
        for (std::size_t j = 0; j < t.size(); ++j)
            t[j] = phi.table[static_cast<std::size_t>(src.position(g.conj(back[j], x)))];
        const bool in = aut_s.count(t) > 0;
        for (auto z : sub.elements()) {
            const ElemId y = g.mul(z, x);
            seen[y] = 1;
            if (in)
                members.push_back(y);
        }
    }
    return ctx.id_of_elements(std::move(members));
}

} // namespace

NPhiData n_phi(const FusionSystem& f, const Morphism& phi) {
    return NPhiData{phi, n_phi_with(f, phi, inner_tables(f, phi.image))};
}

SaturationReport check_saturation(const FusionSystem& f, bool reduce) {
    const auto& ctx = f.context();
    const SubgroupId s = f.base();
    SaturationReport rep;
    rep.aut_f_order = automorphisms(f, s).size();
    rep.aut_p_order = inner_homs(ctx, s, s).size();
    rep.sylow_axiom = rep.aut_f_order % rep.aut_p_order == 0 && (rep.aut_f_order / rep.aut_p_order) % f.prime() != 0;

    // Restrictions to Q of Hom_F(N, S), cached per (N, Q).
    std::map<std::pair<SubgroupId, SubgroupId>, TableSet> restrictions;
    auto extends = [&](const Morphism& phi, SubgroupId n) {
        auto key = std::make_pair(n, phi.source);
        auto it = restrictions.find(key);
        if (it == restrictions.end()) {
            TableSet set;
            for (const auto& psi : f.homs(n))
                set.insert(restrict(ctx, psi, phi.source).table);
            it = restrictions.emplace(key, std::move(set)).first;
        }
        return it->second.count(phi.table) > 0;
    };

    std::map<SubgroupId, TableSet> aut_s;
    rep.extension_axiom = true;
    std::vector<char> done(ctx.size(), 0);
    for (auto q : f.subgroups()) {
        if (done[q])
            continue;
        const auto cls = f_class(f, q);
        for (auto x : cls)
            done[x] = 1;
        // Sources and fully normalized targets, each reduced to S-class representatives.
        std::vector<SubgroupId> sources, targets;
        std::vector<char> seen_src(ctx.size(), 0), seen_tgt(ctx.size(), 0);
        for (auto x : cls) {
            if (!seen_src[x]) {
                sources.push_back(x);
                if (reduce)
                    for (auto y : class_of_under(ctx, s, x))
                        seen_src[y] = 1;
            }
            if (is_fully_normalized(f, x) && !seen_tgt[x]) {
                targets.push_back(x);
                if (reduce)
                    for (auto y : class_of_under(ctx, s, x))
                        seen_tgt[y] = 1;
            }
        }
        rep.subgroups_checked += sources.size();
        for (auto src : sources)
            for (const auto& phi : f.homs(src)) {
                if (std::find(targets.begin(), targets.end(), phi.image) == targets.end())
                    continue;
                ++rep.isomorphisms_checked;
                auto aut = aut_s.find(phi.image);
                if (aut == aut_s.end())
                    aut = aut_s.emplace(phi.image, inner_tables(f, phi.image)).first;
                const SubgroupId n = n_phi_with(f, phi, aut->second);
                if (!extends(phi, n)) {
                    rep.extension_axiom = false;
                    rep.extension_witness = ExtensionFailure{phi, phi.image, n};
                    return rep;
                }
            }
    }
    return rep;
}

namespace {

enum class Restriction { normalizes, centralizes, inner_on_q };

FusionSystem local_subsystem(const FusionSystem& f, SubgroupId q, SubgroupId base, Restriction kind) {
    const auto& ctx = f.context();
    TableSet inner;
    if (kind == Restriction::inner_on_q)
        for (const auto& m : inner_homs(ctx, f.base(), q))
            inner.insert(m.table);
    const auto& q_elements = ctx[q].elements();

    std::map<SubgroupId, std::vector<const Morphism*>> admissible;
    auto maps_of = [&](SubgroupId qr) -> const std::vector<const Morphism*>& {
        auto it = admissible.find(qr);
        if (it != admissible.end())
            return it->second;
        std::vector<const Morphism*> keep;
        for (const auto& psi : f.homs(qr)) {
            Morphism on_q = restrict(ctx, psi, q);
            bool ok = false;
            switch (kind) {
            case Restriction::normalizes: ok = on_q.image == q; break;
            case Restriction::centralizes: ok = on_q.table == q_elements; break;
            case Restriction::inner_on_q: ok = inner.count(on_q.table) > 0; break;
            }
            if (ok)
                keep.push_back(&psi);
        }
        return admissible.emplace(qr, std::move(keep)).first->second;
    };

    std::vector<std::vector<Morphism>> homs(ctx.size());
    for (auto r : ctx.subgroups_of(base)) {
        const SubgroupId qr = ctx.join(q, r);
        for (const Morphism* psi : maps_of(qr))
            homs[r].push_back(restrict(ctx, *psi, r));
    }
    return FusionSystem::from_homs(f.context_ptr(), base, std::move(homs));
}

} // namespace

FusionSystem normalizer_system(const FusionSystem& f, SubgroupId q) {
    if (!f.in_base(q) || !is_fully_normalized(f, q))
        throw PreconditionError("N_F(Q) needs Q fully normalized; " + f.context().describe(q) + " is not");
    return local_subsystem(f, q, f.context().normalizer_in(f.base(), q), Restriction::normalizes);
}

FusionSystem centralizer_system(const FusionSystem& f, SubgroupId q) {
    if (!f.in_base(q) || !is_fully_centralized(f, q))
        throw PreconditionError("C_F(Q) needs Q fully centralized; " + f.context().describe(q) + " is not");
    return local_subsystem(f, q, f.context().centralizer_in(f.base(), q), Restriction::centralizes);
}

FusionSystem np_cf(const FusionSystem& f, SubgroupId q) {
    if (!f.in_base(q) || !is_fully_centralized(f, q))
        throw PreconditionError("N_P(Q)C_F(Q) needs Q fully centralized; " + f.context().describe(q) + " is not");
    return local_subsystem(f, q, f.context().normalizer_in(f.base(), q), Restriction::inner_on_q);
}

bool is_weakly_closed(const FusionSystem& f, SubgroupId w) {
    const auto cls = f_class(f, w);
    return cls.size() == 1 && cls.front() == w;
}

bool is_strongly_closed(const FusionSystem& f, SubgroupId w) {
    const auto& ctx = f.context();
    for (auto sub : ctx.subgroups_of(w))
        for (const auto& m : f.homs(sub))
            if (!ctx.contains(w, m.image))
                return false;
    return true;
}

bool is_normal(const FusionSystem& f, SubgroupId w) {
    const auto& ctx = f.context();
    if (!f.in_base(w) || ctx.normalizer_in(f.base(), w) != f.base())
        return false;
    if (!is_strongly_closed(f, w))
        return false;
    return same_hom_sets(f, normalizer_system(f, w));
}

SubgroupId op_subgroup(const FusionSystem& f) {
    const auto& ctx = f.context();
    const auto& subs = f.subgroups();
    for (auto it = subs.rbegin(); it != subs.rend(); ++it) {
        const SubgroupId w = *it;
        if (ctx.normalizer_in(f.base(), w) != f.base() || !is_strongly_closed(f, w))
            continue;
        if (is_normal(f, w))
            return w;
    }
    return 0;
}

SubgroupId center_of_fusion(const FusionSystem& f) {
    const auto& ctx = f.context();
    const auto candidates = ctx.subgroups_of(ctx.center(f.base()));
    for (auto it = candidates.rbegin(); it != candidates.rend(); ++it)
        if (same_hom_sets(centralizer_system(f, *it), f))
            return *it;
    return 0;
}

SubgroupId center_by_fixed_points(const FusionSystem& f) {
    const auto& ctx = f.context();
    std::vector<ElemId> fixed = ctx[ctx.center(f.base())].elements();
    for (auto q : alperin_family(f)) {
        const Subgroup& sq = ctx[q];
        for (const auto& m : automorphisms(f, q)) {
            std::erase_if(fixed, [&](ElemId z) {
                long pos = sq.position(z);
                return pos < 0 || m.table[static_cast<std::size_t>(pos)] != z;
            });
        }
    }
    return ctx.id_of_elements(std::move(fixed));
}

std::vector<SubgroupId> alperin_family(const FusionSystem& f) {
    const auto& ctx = f.context();
    std::vector<SubgroupId> out;
    std::vector<char> done(ctx.size(), 0);
    for (auto q : f.subgroups()) {
        if (done[q])
            continue;
        const auto cls = f_class(f, q);
        for (auto x : cls)
            done[x] = 1;
        if (!is_centric(f, q))
            continue;
        SubgroupId best = cls.front();
        for (auto x : cls)
            if (ctx[ctx.normalizer_in(f.base(), x)].order() > ctx[ctx.normalizer_in(f.base(), best)].order())
                best = x;
        if (is_radical(f, best))
            out.push_back(best);
    }
    std::sort(out.begin(), out.end());
    return out;
}

FusionSystem generate(const ContextPtr& ctx_ptr, SubgroupId base, std::span<const FusionSystem> parts,
                      std::span<const Morphism> maps) {
    const PGroupContext& ctx = *ctx_ptr;
    for (const auto& part : parts)
        if (part.context_ptr() != ctx_ptr || !ctx.contains(base, part.base()))
            throw InputError("generating part does not live on a subgroup of the base");
    for (const auto& m : maps)
        if (!ctx.contains(base, m.source) || !ctx.contains(base, m.image))
            throw InputError("generating map leaves the base");

    const auto subs = ctx.subgroups_of(base);
    std::vector<std::vector<Morphism>> homs(ctx.size());
    std::map<std::size_t, std::vector<SubgroupId>, std::greater<>> layers;
    for (auto q : subs)
        layers[ctx[q].order()].push_back(q);

    for (const auto& [order, layer] : layers) {
        // Seed isomorphisms between subgroups of this order.
        std::vector<Morphism> seeds;
        for (auto q : layer) {
            auto inner = inner_homs(ctx, base, q);
            seeds.insert(seeds.end(), inner.begin(), inner.end());
            for (const auto& part : parts)
                if (part.in_base(q))
                    seeds.insert(seeds.end(), part.homs(q).begin(), part.homs(q).end());
            for (auto u : ctx.lattice().covers_above(q))
                if (ctx.contains(base, u))
                    for (const auto& m : homs[u])
                        seeds.push_back(restrict(ctx, m, q));
        }
        for (const auto& m : maps)
            if (ctx[m.source].order() == order)
                seeds.push_back(m);

        // Union-find over the layer.
        std::map<SubgroupId, SubgroupId> parent;
        for (auto q : layer)
            parent[q] = q;
        auto find = [&](SubgroupId x) {
            while (parent[x] != x)
                x = parent[x] = parent[parent[x]];
            return x;
        };
        std::map<SubgroupId, std::vector<const Morphism*>> out_edges;
        for (const auto& m : seeds) {
            out_edges[m.source].push_back(&m);
            SubgroupId a = find(m.source), b = find(m.image);
            if (a != b)
                parent[std::max(a, b)] = std::min(a, b);
        }

        std::map<SubgroupId, std::vector<SubgroupId>> components;
        for (auto q : layer)
            components[find(q)].push_back(q);

        for (const auto& [root, members] : components) {
            const Subgroup& b = ctx[root];
            // Spanning tree transversal: tree[X] is an isomorphism root -> X.
            std::map<SubgroupId, Morphism> tree;
            tree.emplace(root, identity_morphism(ctx, root));
            std::vector<SubgroupId> queue{root};
            std::map<SubgroupId, std::vector<Morphism>> in_edges;
            for (auto q : members)
                for (const Morphism* m : out_edges[q])
                    in_edges[m->image].push_back(inverse(ctx, *m));
            for (std::size_t head = 0; head < queue.size(); ++head) {
                const SubgroupId x = queue[head];
                auto visit = [&](const Morphism& m) {
                    if (tree.count(m.image))
                        return;
                    tree.emplace(m.image, compose(ctx, m, tree.at(x)));
                    queue.push_back(m.image);
                };
                for (const Morphism* m : out_edges[x])
                    visit(*m);
                for (const auto& m : in_edges[x])
                    visit(m);
            }
            std::map<SubgroupId, Morphism> tree_inv;
            for (const auto& [x, t] : tree)
                tree_inv.emplace(x, inverse(ctx, t));

            // Aut(root) generated by tree^-1 o seed o tree, as position permutations.
            std::vector<std::vector<std::uint16_t>> gens;
            TableSet gen_seen;
            for (auto q : members)
                for (const Morphism* m : out_edges[q]) {
                    Morphism a = compose(ctx, tree_inv.at(m->image), compose(ctx, *m, tree.at(q)));
                    if (gen_seen.insert(a.table).second)
                        gens.push_back(position_perm(ctx, a));
                }
            std::vector<std::vector<std::uint16_t>> auts;
            std::vector<std::uint16_t> id(b.order());
            std::iota(id.begin(), id.end(), 0);
            std::unordered_set<std::string> aut_seen;
            auto key = [](const std::vector<std::uint16_t>& v) {
                return std::string(reinterpret_cast<const char*>(v.data()), v.size() * sizeof(std::uint16_t));
            };
            aut_seen.insert(key(id));
            auts.push_back(id);
            for (std::size_t head = 0; head < auts.size(); ++head)
                for (const auto& gen : gens) {
                    std::vector<std::uint16_t> next(id.size());
                    for (std::size_t k = 0; k < next.size(); ++k)
                        next[k] = gen[auts[head][k]];
                    if (aut_seen.insert(key(next)).second)
                        auts.push_back(std::move(next));
                }

            // Hom(Q, X) = tree[X] o Aut(root) o tree[Q]^-1.
            for (auto q : members) {
                const Subgroup& sq = ctx[q];
                const Morphism& to_root = tree_inv.at(q);
                std::vector<std::uint16_t> root_pos(sq.order());
                for (std::size_t j = 0; j < sq.order(); ++j)
                    root_pos[j] = static_cast<std::uint16_t>(b.position(to_root.table[j]));
                auto& list = homs[q];
                for (auto x : members) {
                    const Morphism& from_root = tree.at(x);
                    for (const auto& a : auts) {
                        Morphism m;
                        m.source = q;
                        m.image = x;
                        m.table.resize(sq.order());
                        for (std::size_t j = 0; j < sq.order(); ++j)
                            m.table[j] = from_root.table[a[root_pos[j]]];
                        list.push_back(std::move(m));
                    }
                }
                std::sort(list.begin(), list.end());
            }
        }
    }
    return FusionSystem::from_homs(ctx_ptr, base, std::move(homs));
}

bool same_hom_sets(const FusionSystem& a, const FusionSystem& b) {
    if (a.context_ptr() != b.context_ptr() || a.base() != b.base())
        return false;
    for (auto q : a.subgroups()) {
        const auto& ha = a.homs(q);
        const auto& hb = b.homs(q);
        if (ha.size() != hb.size())
            return false;
        for (std::size_t i = 0; i < ha.size(); ++i)
            if (!(ha[i] == hb[i]))
                return false;
    }
    return true;
}

bool equals(const FusionSystem& a, const FusionSystem& b) {
    if (a.context_ptr() != b.context_ptr() || a.base() != b.base())
        return false;
    for (auto q : alperin_family(a)) {
        auto x = automorphisms(a, q);
        auto y = automorphisms(b, q);
        if (x != y)
            return false;
    }
    return same_hom_sets(a, b);
}

} // namespace ff
