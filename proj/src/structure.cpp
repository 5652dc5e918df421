#include "ff/structure.hpp"

#include "ff/error.hpp"

#include <algorithm>
#include <numeric>

namespace ff {

std::optional<PrimePower> prime_power(unsigned long long n) {
    if (n < 2)
        return std::nullopt;
    unsigned long long p = 2;
    while (p * p <= n && n % p != 0)
        ++p;
    if (n % p != 0)
        p = n;
    unsigned k = 0;
    while (n % p == 0) {
        n /= p;
        ++k;
    }
    if (n != 1)
        return std::nullopt;
    return PrimePower{static_cast<unsigned>(p), k};
}

bool is_prime(unsigned long long n) {
    if (n < 2)
        return false;
    for (unsigned long long d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

unsigned long long p_part(unsigned long long n, unsigned p) {
    unsigned long long part = 1;
    while (n % p == 0) {
        n /= p;
        part *= p;
    }
    return part;
}

unsigned long long ipow(unsigned long long base, unsigned e) {
    unsigned long long r = 1;
    while (e--)
        r *= base;
    return r;
}

unsigned prime_of(const Subgroup& h, unsigned fallback) {
    if (h.is_trivial())
        return fallback;
    auto pp = prime_power(h.order());
    if (!pp)
        throw InputError("subgroup of order " + std::to_string(h.order()) + " is not a p-group");
    return pp->prime;
}

Subgroup closure(const GroupPtr& parent, std::span<const ElemId> generators) {
    const Group& g = *parent;
    std::vector<ElemId> gens;
    for (auto s : generators)
        if (s != g.identity() && std::find(gens.begin(), gens.end(), s) == gens.end())
            gens.push_back(s);
    std::vector<ElemId> list{g.identity()};
    std::vector<char> member(g.order(), 0);
    member[g.identity()] = 1;
    for (std::size_t head = 0; head < list.size(); ++head)
        for (auto s : gens) {
            ElemId y = g.mul(list[head], s);
            if (!member[y]) {
                member[y] = 1;
                list.push_back(y);
            }
        }
    if (gens.empty())
        gens.push_back(g.identity());
    return Subgroup(parent, std::move(list), std::move(gens));
}

Subgroup join(const Subgroup& a, const Subgroup& b) {
    if (b.is_subgroup_of(a))
        return a;
    if (a.is_subgroup_of(b))
        return b;
    std::vector<ElemId> gens = a.generators();
    gens.insert(gens.end(), b.generators().begin(), b.generators().end());
    return closure(a.parent_ptr(), gens);
}

Subgroup intersection(const Subgroup& a, const Subgroup& b) {
    std::vector<ElemId> common;
    std::set_intersection(a.elements().begin(), a.elements().end(), b.elements().begin(), b.elements().end(),
                          std::back_inserter(common));
    return Subgroup(a.parent_ptr(), std::move(common));
}

Subgroup conjugate(const Subgroup& s, ElemId g) {
    const Group& grp = s.parent();
    std::vector<ElemId> out;
    out.reserve(s.order());
    for (auto x : s.elements())
        out.push_back(grp.conj(x, g));
    return Subgroup(s.parent_ptr(), std::move(out));
}

Subgroup normal_closure(const Subgroup& s, const Subgroup& ambient) {
    const Group& g = s.parent();
    Subgroup current = s;
    for (;;) {
        std::vector<ElemId> gens = current.generators();
        bool grew = false;
        for (auto x : current.generators())
            for (auto a : ambient.generators()) {
                ElemId y = g.conj(x, a);
                if (!current.contains(y)) {
                    gens.push_back(y);
                    grew = true;
                }
            }
        if (!grew)
            return current;
        current = closure(s.parent_ptr(), gens);
    }
}

bool normalizes(ElemId g, const Subgroup& target) {
    const Group& grp = target.parent();
    for (auto x : target.generators())
        if (!target.contains(grp.conj(x, g)))
            return false;
    return true;
}

bool is_normal_in(const Subgroup& n, const Subgroup& h) {
    if (!n.is_subgroup_of(h))
        return false;
    for (auto g : h.generators())
        if (!normalizes(g, n))
            return false;
    return true;
}

bool is_abelian(const Subgroup& h) {
    const Group& g = h.parent();
    const auto& gens = h.generators();
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j)
            if (g.mul(gens[i], gens[j]) != g.mul(gens[j], gens[i]))
                return false;
    return true;
}

Subgroup centralizer(const Subgroup& ambient, const Subgroup& target) {
    const Group& g = ambient.parent();
    const auto& gens = target.generators();
    std::vector<ElemId> out;
    for (auto x : ambient.elements()) {
        bool ok = true;
        for (auto t : gens)
            if (g.mul(x, t) != g.mul(t, x)) {
                ok = false;
                break;
            }
        if (ok)
            out.push_back(x);
    }
    return Subgroup(ambient.parent_ptr(), std::move(out));
}

Subgroup normalizer(const Subgroup& ambient, const Subgroup& target) {
    std::vector<ElemId> out;
    for (auto x : ambient.elements())
        if (normalizes(x, target))
            out.push_back(x);
    return Subgroup(ambient.parent_ptr(), std::move(out));
}

Subgroup center(const Subgroup& h) { return centralizer(h, h); }

Subgroup commutator_subgroup(const Subgroup& a, const Subgroup& b) {
    const Group& g = a.parent();
    std::vector<ElemId> comms;
    for (auto x : a.generators())
        for (auto y : b.generators())
            comms.push_back(g.commutator(x, y));
    return normal_closure(closure(a.parent_ptr(), comms), join(a, b));
}

Subgroup derived_subgroup(const Subgroup& h) { return commutator_subgroup(h, h); }

CentralSeriesData central_series(const Subgroup& h) {
    const Group& g = h.parent();
    CentralSeriesData data;

    data.upper.push_back(Subgroup::trivial(h.parent_ptr()));
    while (!(data.upper.back() == h)) {
        const Subgroup& z = data.upper.back();
        std::vector<ElemId> next;
        for (auto x : h.elements()) {
            bool central = true;
            for (auto s : h.generators())
                if (!z.contains(g.commutator(x, s))) {
                    central = false;
                    break;
                }
            if (central)
                next.push_back(x);
        }
        if (next.size() == z.order())
            break;
        data.upper.emplace_back(h.parent_ptr(), std::move(next));
    }

    data.lower.push_back(h);
    while (!data.lower.back().is_trivial()) {
        Subgroup next = commutator_subgroup(data.lower.back(), h);
        if (next == data.lower.back())
            break;
        data.lower.push_back(std::move(next));
    }

    const bool upper_done = data.upper.back() == h;
    const bool lower_done = data.lower.back().is_trivial();
    if (upper_done && lower_done) {
        if (data.upper.size() != data.lower.size())
            throw std::logic_error("upper and lower central series lengths disagree");
        data.nilpotence_class = static_cast<unsigned>(data.upper.size() - 1);
    }
    return data;
}

unsigned nilpotence_class(const Subgroup& h) {
    auto data = central_series(h);
    if (!data.nilpotent())
        throw InputError("group of order " + std::to_string(h.order()) + " is not nilpotent");
    return *data.nilpotence_class;
}

Subgroup agemo(const Subgroup& h, unsigned n) {
    const unsigned p = prime_of(h, 2);
    const unsigned long long e = ipow(p, n);
    const Group& g = h.parent();
    std::vector<ElemId> powers;
    for (auto x : h.elements())
        powers.push_back(g.pow(x, e));
    std::sort(powers.begin(), powers.end());
    powers.erase(std::unique(powers.begin(), powers.end()), powers.end());
    return closure(h.parent_ptr(), powers);
}

Subgroup omega(const Subgroup& h, unsigned n) {
    const unsigned p = prime_of(h, 2);
    const unsigned long long e = ipow(p, n);
    const Group& g = h.parent();
    std::vector<ElemId> small;
    for (auto x : h.elements())
        if (g.pow(x, e) == g.identity())
            small.push_back(x);
    return closure(h.parent_ptr(), small);
}

unsigned long long exponent(const Subgroup& h) {
    unsigned long long e = 1;
    for (auto x : h.elements())
        e = std::lcm(e, h.parent().element_order(x));
    return e;
}

Subgroup iterated_commutator(const Subgroup& a, ElemId x, unsigned k) {
    if (k < 1)
        throw InputError("iterated commutator depth must be at least 1");
    if (!normalizes(x, a))
        throw InputError("element does not normalize the subgroup");
    const Group& g = a.parent();
    Subgroup current = a;
    for (unsigned step = 0; step < k; ++step) {
        std::vector<ElemId> comms;
        for (auto y : current.elements())
            comms.push_back(g.commutator(y, x));
        std::sort(comms.begin(), comms.end());
        comms.erase(std::unique(comms.begin(), comms.end()), comms.end());
        current = closure(a.parent_ptr(), comms);
    }
    return current;
}

SubgroupLattice::SubgroupLattice(const Subgroup& top) {
    const Group& g = top.parent();
    if (top.order() > g.caps().max_lattice_order)
        throw CapExceeded("subgroup enumeration limited to order " + std::to_string(g.caps().max_lattice_order) +
                          ", got " + std::to_string(top.order()));
    prime_ = prime_of(top, 0);

    std::vector<Subgroup> all{Subgroup::trivial(top.parent_ptr())};
    std::vector<std::pair<SubgroupId, SubgroupId>> edges;
    std::unordered_map<std::size_t, std::vector<SubgroupId>> index;
    index[all[0].key()].push_back(0);

    auto lookup = [&](const std::vector<ElemId>& els, std::size_t hash) -> std::optional<SubgroupId> {
        auto it = index.find(hash);
        if (it == index.end())
            return std::nullopt;
        for (auto id : it->second)
            if (all[id].elements() == els)
                return id;
        return std::nullopt;
    };

    std::size_t layer_begin = 0;
    while (prime_ != 0) {
        const std::size_t layer_end = all.size();
        if (layer_begin == layer_end || all[layer_begin].order() == top.order())
            break;
        for (std::size_t hid = layer_begin; hid < layer_end; ++hid) {
            const Subgroup h = all[hid];
            std::vector<SubgroupId> built;
            for (auto x : top.elements()) {
                if (h.contains(x) || !h.contains(g.pow(x, prime_)) || !normalizes(x, h))
                    continue;
                bool covered = false;
                for (auto id : built)
                    if (all[id].contains(x)) {
                        covered = true;
                        break;
                    }
                if (covered)
                    continue;
                // <H, x> is the union of the cosets H x^i, 0 <= i < p.
                std::vector<ElemId> els;
                els.reserve(h.order() * prime_);
                ElemId xi = g.identity();
                for (unsigned i = 0; i < prime_; ++i) {
                    for (auto y : h.elements())
                        els.push_back(g.mul(y, xi));
                    xi = g.mul(xi, x);
                }
                std::sort(els.begin(), els.end());
                const std::size_t hash = hash_ids(els);
                auto existing = lookup(els, hash);
                SubgroupId kid;
                if (existing) {
                    kid = *existing;
                } else {
                    std::vector<ElemId> gens = h.generators();
                    if (gens.size() == 1 && gens[0] == g.identity())
                        gens.clear();
                    gens.push_back(x);
                    kid = static_cast<SubgroupId>(all.size());
                    all.emplace_back(top.parent_ptr(), std::move(els), std::move(gens));
                    index[hash].push_back(kid);
                }
                built.push_back(kid);
                edges.emplace_back(static_cast<SubgroupId>(hid), kid);
            }
        }
        layer_begin = layer_end;
    }

    // Renumber into canonical order.
    std::vector<SubgroupId> order(all.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](SubgroupId a, SubgroupId b) { return all[a] < all[b]; });
    std::vector<SubgroupId> rank(all.size());
    for (SubgroupId i = 0; i < order.size(); ++i)
        rank[order[i]] = i;
    subgroups_.reserve(all.size());
    for (auto id : order)
        subgroups_.push_back(all[id]);
    for (SubgroupId i = 0; i < subgroups_.size(); ++i)
        by_hash_[subgroups_[i].key()].push_back(i);
    above_.resize(subgroups_.size());
    below_.resize(subgroups_.size());
    for (auto [lo, hi] : edges) {
        above_[rank[lo]].push_back(rank[hi]);
        below_[rank[hi]].push_back(rank[lo]);
    }
    for (auto* v : {&above_, &below_})
        for (auto& list : *v) {
            std::sort(list.begin(), list.end());
            list.erase(std::unique(list.begin(), list.end()), list.end());
        }
}

std::optional<SubgroupId> SubgroupLattice::find(std::span<const ElemId> sorted_elements) const {
    auto it = by_hash_.find(hash_ids(sorted_elements));
    if (it == by_hash_.end())
        return std::nullopt;
    for (auto id : it->second) {
        const auto& els = subgroups_[id].elements();
        if (std::equal(els.begin(), els.end(), sorted_elements.begin(), sorted_elements.end()))
            return id;
    }
    return std::nullopt;
}

std::optional<SubgroupId> SubgroupLattice::find(const Subgroup& s) const {
    if (s.parent_ptr() != top().parent_ptr())
        return std::nullopt;
    return find(std::span<const ElemId>(s.elements()));
}

SubgroupId SubgroupLattice::id_of(const Subgroup& s) const {
    auto id = find(s);
    if (!id)
        throw InputError("subgroup " + s.describe() + " is not in the lattice");
    return *id;
}

SubgroupId SubgroupLattice::id_of(std::span<const ElemId> sorted_elements) const {
    auto id = find(sorted_elements);
    if (!id)
        throw InputError("element set is not a subgroup in the lattice");
    return *id;
}

std::vector<Subgroup> all_subgroups(const Subgroup& p) { return SubgroupLattice(p).subgroups(); }

Subgroup thompson_subgroup(const SubgroupLattice& lattice) {
    std::size_t best = 0;
    std::vector<const Subgroup*> abelian;
    for (const auto& s : lattice.subgroups()) {
        if (s.order() < best || !is_abelian(s))
            continue;
        if (s.order() > best) {
            best = s.order();
            abelian.clear();
        }
        abelian.push_back(&s);
    }
    Subgroup j = *abelian.front();
    for (const auto* s : abelian)
        j = join(j, *s);
    return j;
}

Subgroup thompson_subgroup(const Subgroup& h) { return thompson_subgroup(SubgroupLattice(h)); }

Subgroup sylow(const Subgroup& g, unsigned p) {
    if (!is_prime(p))
        throw InputError(std::to_string(p) + " is not prime");
    const unsigned long long target = p_part(g.order(), p);
    if (target == 1)
        throw InputError("prime " + std::to_string(p) + " does not divide the group order " +
                         std::to_string(g.order()));
    const Group& grp = g.parent();

    Subgroup q;
    for (auto x : g.elements()) {
        auto o = grp.element_order(x);
        if (o % p == 0) {
            ElemId y = grp.pow(x, o / p);
            q = closure(g.parent_ptr(), std::span<const ElemId>(&y, 1));
            break;
        }
    }
    while (q.order() < target) {
        bool grown = false;
        for (auto y : g.elements()) {
            if (q.contains(y) || !q.contains(grp.pow(y, p)) || !normalizes(y, q))
                continue;
            std::vector<ElemId> els;
            ElemId yi = grp.identity();
            for (unsigned i = 0; i < p; ++i) {
                for (auto z : q.elements())
                    els.push_back(grp.mul(z, yi));
                yi = grp.mul(yi, y);
            }
            std::vector<ElemId> gens = q.generators();
            gens.push_back(y);
            q = Subgroup(g.parent_ptr(), std::move(els), std::move(gens));
            grown = true;
            break;
        }
        if (!grown)
            throw std::logic_error("normalizer growth stalled below the Sylow order");
    }
    return q;
}

std::optional<std::size_t> SubgroupOrbit::index_of(const Subgroup& s) const {
    auto it = by_hash.find(s.key());
    if (it == by_hash.end())
        return std::nullopt;
    for (auto i : it->second)
        if (members[i] == s)
            return i;
    return std::nullopt;
}

Subgroup SubgroupOrbit::stabilizer(const GroupPtr& parent) const { return closure(parent, stabilizer_generators); }

SubgroupOrbit subgroup_orbit(const Subgroup& ambient, const Subgroup& q) {
    const Group& g = ambient.parent();
    const std::size_t bound = g.caps().max_orbit;
    SubgroupOrbit orbit;
    orbit.members.push_back(q);
    orbit.witnesses.push_back(g.identity());
    orbit.by_hash[q.key()].push_back(0);
    std::vector<ElemId> schreier;
    const auto& gens = ambient.generators();
    for (std::size_t head = 0; head < orbit.members.size(); ++head)
        for (auto s : gens) {
            Subgroup image = conjugate(orbit.members[head], s);
            ElemId w = g.mul(orbit.witnesses[head], s);
            auto found = orbit.index_of(image);
            if (found) {
                schreier.push_back(g.mul(w, g.inv(orbit.witnesses[*found])));
                continue;
            }
            if (orbit.members.size() >= bound)
                throw CapExceeded("subgroup orbit exceeds the bound of " + std::to_string(bound));
            orbit.by_hash[image.key()].push_back(orbit.members.size());
            orbit.members.push_back(std::move(image));
            orbit.witnesses.push_back(w);
        }
    std::sort(schreier.begin(), schreier.end());
    schreier.erase(std::unique(schreier.begin(), schreier.end()), schreier.end());
    schreier.erase(std::remove(schreier.begin(), schreier.end(), g.identity()), schreier.end());
    if (schreier.empty())
        schreier.push_back(g.identity());
    orbit.stabilizer_generators = std::move(schreier);
    return orbit;
}

ThompsonOrder thompson_compare(const Subgroup& p, const Subgroup& q1, const Subgroup& q2) {
    const auto n1 = normalizer(p, q1).order();
    const auto n2 = normalizer(p, q2).order();
    if (n1 != n2)
        return n1 < n2 ? ThompsonOrder::less : ThompsonOrder::greater;
    if (q1.order() != q2.order())
        return q1.order() < q2.order() ? ThompsonOrder::less : ThompsonOrder::greater;
    return ThompsonOrder::equal_rank;
}

} // namespace ff
