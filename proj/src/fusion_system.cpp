#include "ff/fusion.hpp"

#include "ff/error.hpp"

#include <algorithm>
#include <mutex>
#include <unordered_set>

namespace ff {

// ---- Context ------------------------------------------------------------------

std::shared_ptr<const PGroupContext> PGroupContext::create(const Subgroup& p) {
    const Group& parent = p.parent();
    if (!p.is_trivial() && !prime_power(p.order()))
        throw InputError("fusion systems need a p-group, got order " + std::to_string(p.order()));
    std::vector<GroupElement> gens;
    for (auto g : p.generators())
        gens.push_back(parent.element(g));
    std::shared_ptr<PGroupContext> ctx(new PGroupContext());
    ctx->ambient_ = p.parent_ptr();
    ctx->group_ = Group::generate(parent.shape(), std::move(gens), parent.caps());
    // Both groups number elements by encoding, so the embedding is monotone.
    ctx->embedding_ = p.elements();
    if (ctx->embedding_.size() != ctx->group_->order())
        throw std::logic_error("standalone copy of P has the wrong order");
    for (ElemId i = 0; i < ctx->embedding_.size(); ++i)
        if (!(parent.element(ctx->embedding_[i]) == ctx->group_->element(i)))
            throw std::logic_error("embedding of P is not order preserving");

    const Subgroup whole = Subgroup::whole(ctx->group_);
    ctx->lattice_ = std::make_unique<SubgroupLattice>(whole);
    const std::size_t n = ctx->lattice_->size();
    ctx->normalizers_.resize(n);
    ctx->centralizers_.resize(n);
    ctx->centers_.resize(n);
    for (SubgroupId id = 0; id < n; ++id) {
        const Subgroup& q = (*ctx->lattice_)[id];
        ctx->normalizers_[id] = ctx->lattice_->id_of(ff::normalizer(whole, q));
        ctx->centralizers_[id] = ctx->lattice_->id_of(ff::centralizer(whole, q));
        ctx->centers_[id] = ctx->lattice_->id_of(ff::center(q));
    }
    return ctx;
}

SubgroupId PGroupContext::id_of_elements(std::vector<ElemId> elements) const {
    std::sort(elements.begin(), elements.end());
    return lattice_->id_of(std::span<const ElemId>(elements));
}

std::optional<SubgroupId> PGroupContext::locate(const Subgroup& ambient_subgroup) const {
    if (ambient_subgroup.parent_ptr() == group_)
        return lattice_->find(ambient_subgroup);
    if (ambient_subgroup.parent_ptr() != ambient_)
        return std::nullopt;
    std::vector<ElemId> els;
    for (auto g : ambient_subgroup.elements()) {
        auto x = from_ambient(g);
        if (!x)
            return std::nullopt;
        els.push_back(*x);
    }
    std::sort(els.begin(), els.end());
    return lattice_->find(std::span<const ElemId>(els));
}

std::optional<ElemId> PGroupContext::from_ambient(ElemId g) const {
    auto it = std::lower_bound(embedding_.begin(), embedding_.end(), g);
    if (it == embedding_.end() || *it != g)
        return std::nullopt;
    return static_cast<ElemId>(it - embedding_.begin());
}

bool PGroupContext::contains(SubgroupId big, SubgroupId small) const {
    return (*lattice_)[small].is_subgroup_of((*lattice_)[big]);
}

SubgroupId PGroupContext::join(SubgroupId a, SubgroupId b) const {
    if (contains(a, b))
        return a;
    if (contains(b, a))
        return b;
    return lattice_->id_of(ff::join((*lattice_)[a], (*lattice_)[b]));
}

SubgroupId PGroupContext::meet(SubgroupId a, SubgroupId b) const {
    if (contains(a, b))
        return b;
    if (contains(b, a))
        return a;
    return lattice_->id_of(intersection((*lattice_)[a], (*lattice_)[b]));
}

SubgroupId PGroupContext::conjugate(SubgroupId q, ElemId g) const {
    std::vector<ElemId> els;
    for (auto x : (*lattice_)[q].elements())
        els.push_back(group_->conj(x, g));
    return id_of_elements(std::move(els));
}

std::vector<SubgroupId> PGroupContext::subgroups_of(SubgroupId s) const {
    std::vector<SubgroupId> out;
    for (SubgroupId id = 0; id <= s; ++id)
        if (contains(s, id))
            out.push_back(id);
    return out;
}

// ---- Morphism helpers -----------------------------------------------------------

namespace {

std::size_t pos_in(const Subgroup& s, ElemId x) {
    long p = s.position(x);
    if (p < 0)
        throw std::logic_error("element outside subgroup");
    return static_cast<std::size_t>(p);
}

SubgroupId image_id(const PGroupContext& ctx, const std::vector<ElemId>& table) {
    return ctx.id_of_elements(table);
}

} // namespace

Morphism identity_morphism(const PGroupContext& ctx, SubgroupId q) {
    return Morphism{q, q, ctx[q].elements(), ctx.to_ambient(ctx.group()->identity())};
}

Morphism restrict(const PGroupContext& ctx, const Morphism& m, SubgroupId sub) {
    if (sub == m.source)
        return m;
    const Subgroup& src = ctx[m.source];
    Morphism out;
    out.source = sub;
    out.witness = m.witness;
    for (auto x : ctx[sub].elements())
        out.table.push_back(m.table[pos_in(src, x)]);
    out.image = image_id(ctx, out.table);
    return out;
}

Morphism compose(const PGroupContext& ctx, const Morphism& second, const Morphism& first) {
    if (second.source != first.image)
        throw std::logic_error("compose: source of the second map is not the image of the first");
    const Subgroup& mid = ctx[first.image];
    Morphism out;
    out.source = first.source;
    out.image = second.image;
    out.table.reserve(first.table.size());
    for (auto y : first.table)
        out.table.push_back(second.table[pos_in(mid, y)]);
    if (first.witness && second.witness)
        out.witness = ctx.ambient()->mul(*first.witness, *second.witness);
    return out;
}

Morphism inverse(const PGroupContext& ctx, const Morphism& m) {
    const Subgroup& src = ctx[m.source];
    const Subgroup& img = ctx[m.image];
    Morphism out;
    out.source = m.image;
    out.image = m.source;
    out.table.assign(img.order(), 0);
    for (std::size_t k = 0; k < m.table.size(); ++k)
        out.table[pos_in(img, m.table[k])] = src.elements()[k];
    if (m.witness)
        out.witness = ctx.ambient()->inv(*m.witness);
    return out;
}

Morphism conjugation(const PGroupContext& ctx, SubgroupId q, ElemId g) {
    Morphism out;
    out.source = q;
    for (auto x : ctx[q].elements())
        out.table.push_back(ctx.group()->conj(x, g));
    out.image = image_id(ctx, out.table);
    out.witness = ctx.to_ambient(g);
    return out;
}

Morphism morphism_from_generators(const PGroupContext& ctx, SubgroupId q, std::span<const ElemId> gens,
                                  std::span<const ElemId> images) {
    if (gens.size() != images.size())
        throw InputError("generator and image lists differ in length");
    const Group& g = *ctx.group();
    const Subgroup& src = ctx[q];
    std::vector<ElemId> table(src.order(), 0);
    std::vector<char> done(src.order(), 0);
    std::vector<ElemId> queue{g.identity()};
    table[pos_in(src, g.identity())] = g.identity();
    done[pos_in(src, g.identity())] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        ElemId x = queue[head];
        ElemId fx = table[pos_in(src, x)];
        for (std::size_t s = 0; s < gens.size(); ++s) {
            ElemId y = g.mul(x, gens[s]);
            long py = src.position(y);
            if (py < 0)
                throw InputError("generator lies outside the stated subgroup");
            if (!done[static_cast<std::size_t>(py)]) {
                done[static_cast<std::size_t>(py)] = 1;
                table[static_cast<std::size_t>(py)] = g.mul(fx, images[s]);
                queue.push_back(y);
            }
        }
    }
    if (queue.size() != src.order())
        throw InputError("generators do not generate the stated subgroup");
    const auto& els = src.elements();
    for (std::size_t i = 0; i < els.size(); ++i)
        for (std::size_t j = 0; j < els.size(); ++j)
            if (table[pos_in(src, g.mul(els[i], els[j]))] != g.mul(table[i], table[j]))
                throw InputError("generator images do not define a homomorphism");
    std::vector<ElemId> sorted = table;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw InputError("generator images do not define an injective map");
    auto img = ctx.lattice().find(std::span<const ElemId>(sorted));
    if (!img)
        throw InputError("image is not a subgroup");
    return Morphism{q, *img, std::move(table), std::nullopt};
}

std::vector<Morphism> inner_homs(const PGroupContext& ctx, SubgroupId base, SubgroupId q) {
    std::vector<Morphism> out;
    std::unordered_set<std::vector<ElemId>, TableHash> seen;
    // Elements of one coset of C_S(Q) give the same map.
    const Subgroup& c = ctx[ctx.centralizer_in(base, q)];
    std::vector<char> covered(ctx.group()->order(), 0);
    for (auto g : ctx[base].elements()) {
        if (covered[g])
            continue;
        for (auto z : c.elements())
            covered[ctx.group()->mul(z, g)] = 1;
        Morphism m = conjugation(ctx, q, g);
        if (seen.insert(m.table).second)
            out.push_back(std::move(m));
    }
    std::sort(out.begin(), out.end());
    return out;
}

GroupMorphism to_group_morphism(const PGroupContext& ctx, const Morphism& m, SubgroupId target) {
    return GroupMorphism{ctx[m.source], ctx[target], m.table};
}

// ---- FusionSystem -------------------------------------------------------------------

struct FusionSystem::State {
    std::mutex mutex;
    std::vector<std::unique_ptr<const std::vector<Morphism>>> slots;

    // Group realization.
    bool realized = false;
    Subgroup ambient;
    struct ClassData {
        SubgroupId rep = 0;
        std::vector<SubgroupId> members;
        // Aut_G(rep) as permutations of rep's element positions, with witnesses in G.
        std::vector<std::vector<std::uint32_t>> auts;
        std::vector<ElemId> aut_witnesses;
    };
    std::vector<ClassData> classes;
    std::vector<long> class_of;
    std::vector<ElemId> witness_of;

    std::once_flag saturation_once;
    SaturationReport saturation;
};

const SaturationReport& FusionSystem::saturation() const {
    std::call_once(state_->saturation_once, [this] { state_->saturation = check_saturation(*this); });
    return state_->saturation;
}

bool FusionSystem::group_realized() const noexcept { return state_->realized; }

FusionSystem FusionSystem::from_homs(ContextPtr ctx, SubgroupId base, std::vector<std::vector<Morphism>> homs) {
    FusionSystem f;
    f.ctx_ = std::move(ctx);
    f.base_ = base;
    f.subgroups_ = f.ctx_->subgroups_of(base);
    f.state_ = std::make_shared<State>();
    f.state_->slots.resize(f.ctx_->size());
    homs.resize(f.ctx_->size());
    for (auto q : f.subgroups_) {
        auto& list = homs[q];
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
        f.state_->slots[q] = std::make_unique<const std::vector<Morphism>>(std::move(list));
    }
    return f;
}

namespace {

void compute_class(const PGroupContext& ctx, FusionSystem::State& st, SubgroupId q);

} // namespace

const std::vector<Morphism>& FusionSystem::homs(SubgroupId q) const {
    if (q >= ctx_->size() || !in_base(q))
        throw PreconditionError("subgroup " + ctx_->describe(q) + " is not contained in the underlying p-group");
    std::lock_guard lock(state_->mutex);
    auto& slot = state_->slots[q];
    if (slot)
        return *slot;
    if (!state_->realized)
        throw std::logic_error("explicit fusion system is missing a hom-set");

    const PGroupContext& ctx = *ctx_;
    const Group& amb = *ctx.ambient();
    if (state_->class_of[q] < 0)
        compute_class(ctx, *state_, q);
    const auto& cls = state_->classes[static_cast<std::size_t>(state_->class_of[q])];
    const Subgroup& rep = ctx[cls.rep];
    const Subgroup& src = ctx[q];

    // rep^(w_X) as tables on rep positions, for every member X.
    auto conj_table = [&](ElemId w) {
        std::vector<ElemId> t;
        t.reserve(rep.order());
        for (auto z : rep.elements())
            t.push_back(*ctx.from_ambient(amb.conj(ctx.to_ambient(z), w)));
        return t;
    };
    const ElemId wq = state_->witness_of[q];
    const auto tq = conj_table(wq);
    std::vector<std::uint32_t> to_rep(src.order());
    for (std::uint32_t k = 0; k < tq.size(); ++k)
        to_rep[static_cast<std::size_t>(src.position(tq[k]))] = k;

    std::vector<Morphism> out;
    for (auto x : cls.members) {
        const ElemId wx = state_->witness_of[x];
        const auto tx = conj_table(wx);
        for (std::size_t a = 0; a < cls.auts.size(); ++a) {
            Morphism m;
            m.source = q;
            m.image = x;
            m.table.resize(src.order());
            for (std::size_t j = 0; j < src.order(); ++j)
                m.table[j] = tx[cls.auts[a][to_rep[j]]];
            m.witness = amb.mul(amb.mul(amb.inv(wq), cls.aut_witnesses[a]), wx);
            out.push_back(std::move(m));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    slot = std::make_unique<const std::vector<Morphism>>(std::move(out));
    return *slot;
}

namespace {

void compute_class(const PGroupContext& ctx, FusionSystem::State& st, SubgroupId q) {
    const Group& amb = *ctx.ambient();
    const Subgroup& rep = ctx[q];
    std::vector<ElemId> embedded;
    for (auto x : rep.elements())
        embedded.push_back(ctx.to_ambient(x));
    Subgroup in_g(ctx.ambient(), std::move(embedded));
    SubgroupOrbit orbit = subgroup_orbit(st.ambient, in_g);

    FusionSystem::State::ClassData cls;
    cls.rep = q;
    const auto cid = static_cast<long>(st.classes.size());
    for (std::size_t i = 0; i < orbit.members.size(); ++i) {
        auto id = ctx.locate(orbit.members[i]);
        if (!id)
            continue;
        if (st.class_of[*id] < 0) {
            st.class_of[*id] = cid;
            st.witness_of[*id] = orbit.witnesses[i];
            cls.members.push_back(*id);
        }
    }
    std::sort(cls.members.begin(), cls.members.end());

    // Aut_G(rep) from the Schreier generators of N_G(rep).
    auto perm_of = [&](ElemId n) {
        std::vector<std::uint32_t> perm(rep.order());
        for (std::size_t k = 0; k < rep.order(); ++k) {
            ElemId y = *ctx.from_ambient(amb.conj(ctx.to_ambient(rep.elements()[k]), n));
            perm[k] = static_cast<std::uint32_t>(rep.position(y));
        }
        return perm;
    };
    std::vector<std::vector<std::uint32_t>> gens;
    std::vector<ElemId> gen_witness;
    {
        std::unordered_set<std::vector<ElemId>, TableHash> seen;
        for (auto n : orbit.stabilizer_generators) {
            auto perm = perm_of(n);
            std::vector<ElemId> key(perm.begin(), perm.end());
            if (seen.insert(key).second) {
                gens.push_back(std::move(perm));
                gen_witness.push_back(n);
            }
        }
    }
    std::vector<std::uint32_t> identity(rep.order());
    for (std::uint32_t k = 0; k < identity.size(); ++k)
        identity[k] = k;
    std::unordered_set<std::vector<ElemId>, TableHash> seen{std::vector<ElemId>(identity.begin(), identity.end())};
    cls.auts.push_back(identity);
    cls.aut_witnesses.push_back(amb.identity());
    for (std::size_t head = 0; head < cls.auts.size(); ++head)
        for (std::size_t s = 0; s < gens.size(); ++s) {
            std::vector<std::uint32_t> next(rep.order());
            for (std::size_t k = 0; k < next.size(); ++k)
                next[k] = gens[s][cls.auts[head][k]];
            std::vector<ElemId> key(next.begin(), next.end());
            if (seen.insert(std::move(key)).second) {
                cls.auts.push_back(std::move(next));
                cls.aut_witnesses.push_back(amb.mul(cls.aut_witnesses[head], gen_witness[s]));
            }
        }
    st.classes.push_back(std::move(cls));
}

} // namespace

FusionSystem fusion_of_group(const Subgroup& g, const Subgroup& p) {
    if (g.parent_ptr() != p.parent_ptr())
        throw InputError("P and G must live in the same parent group");
    auto pp = prime_power(p.order());
    if (!pp)
        throw InputError("P (order " + std::to_string(p.order()) + ") is not a nontrivial p-group");
    if (!p.is_subgroup_of(g) || p_part(g.order(), pp->prime) != p.order())
        throw InputError("P (order " + std::to_string(p.order()) + ") is not a Sylow " + std::to_string(pp->prime) +
                         "-subgroup of G (order " + std::to_string(g.order()) + ")");
    FusionSystem f;
    f.ctx_ = PGroupContext::create(p);
    f.base_ = f.ctx_->top();
    f.subgroups_ = f.ctx_->subgroups_of(f.base_);
    f.state_ = std::make_shared<FusionSystem::State>();
    f.state_->slots.resize(f.ctx_->size());
    f.state_->realized = true;
    f.state_->ambient = g;
    f.state_->class_of.assign(f.ctx_->size(), -1);
    f.state_->witness_of.assign(f.ctx_->size(), 0);
    return f;
}

FusionSystem fusion_of_group(const GroupPtr& g, unsigned prime) {
    Subgroup whole = Subgroup::whole(g);
    return fusion_of_group(whole, sylow(whole, prime));
}

} // namespace ff
