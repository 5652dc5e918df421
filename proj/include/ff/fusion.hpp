#pragma once

#include "ff/group.hpp"
#include "ff/structure.hpp"

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ff {

/// The p-group P underlying a fusion system, copied into a standalone group
/// with a multiplication table, together with its subgroup lattice. Every
/// subsystem of a fusion system on P shares the same context, so subgroups
/// are named by lattice id throughout the fusion engine.
class PGroupContext {
public:
    /// `p` may live inside a large ambient group; ids are mapped both ways.
    static std::shared_ptr<const PGroupContext> create(const Subgroup& p);

    const GroupPtr& group() const noexcept { return group_; }
    const GroupPtr& ambient() const noexcept { return ambient_; }
    unsigned prime() const noexcept { return lattice_->prime(); }
    const SubgroupLattice& lattice() const noexcept { return *lattice_; }
    std::size_t size() const noexcept { return lattice_->size(); }
    const Subgroup& operator[](SubgroupId id) const { return (*lattice_)[id]; }
    SubgroupId top() const noexcept { return static_cast<SubgroupId>(lattice_->size() - 1); }

    SubgroupId id_of(const Subgroup& s) const { return lattice_->id_of(s); }
    SubgroupId id_of_elements(std::vector<ElemId> elements) const;
    /// Lattice id of a subgroup of the ambient group lying inside P.
    std::optional<SubgroupId> locate(const Subgroup& ambient_subgroup) const;

    ElemId to_ambient(ElemId x) const { return embedding_[x]; }
    std::optional<ElemId> from_ambient(ElemId g) const;

    bool contains(SubgroupId big, SubgroupId small) const;
    SubgroupId join(SubgroupId a, SubgroupId b) const;
    SubgroupId meet(SubgroupId a, SubgroupId b) const;
    SubgroupId conjugate(SubgroupId q, ElemId g) const;
    /// N_P(Q), C_P(Q), Z(Q), all cached.
    SubgroupId normalizer(SubgroupId q) const { return normalizers_[q]; }
    SubgroupId centralizer(SubgroupId q) const { return centralizers_[q]; }
    SubgroupId center(SubgroupId q) const { return centers_[q]; }
    /// N_S(Q) and C_S(Q) for S in the lattice.
    SubgroupId normalizer_in(SubgroupId s, SubgroupId q) const { return meet(s, normalizers_[q]); }
    SubgroupId centralizer_in(SubgroupId s, SubgroupId q) const { return meet(s, centralizers_[q]); }
    /// All lattice ids contained in s, ascending.
    std::vector<SubgroupId> subgroups_of(SubgroupId s) const;

    std::string describe(SubgroupId q) const { return (*lattice_)[q].describe(); }

private:
    PGroupContext() = default;

    GroupPtr group_;
    GroupPtr ambient_;
    std::vector<ElemId> embedding_;
    std::unique_ptr<SubgroupLattice> lattice_;
    std::vector<SubgroupId> normalizers_;
    std::vector<SubgroupId> centralizers_;
    std::vector<SubgroupId> centers_;
};

using ContextPtr = std::shared_ptr<const PGroupContext>;

/// An injective homomorphism from a subgroup of P into P, stored as a table.
struct Morphism {
    SubgroupId source = 0;
    SubgroupId image = 0;
    /// table[k] is the image of the k-th element (canonical order) of the source.
    std::vector<ElemId> table;
    /// For group-realized systems: an ambient element g with table = (x -> g^-1 x g).
    std::optional<ElemId> witness;

    bool operator==(const Morphism& o) const { return source == o.source && table == o.table; }
    bool operator<(const Morphism& o) const {
        return source != o.source ? source < o.source : table < o.table;
    }
};

struct TableHash {
    std::size_t operator()(const std::vector<ElemId>& t) const noexcept { return hash_ids(t); }
};

Morphism identity_morphism(const PGroupContext& ctx, SubgroupId q);
Morphism restrict(const PGroupContext& ctx, const Morphism& m, SubgroupId sub);
/// second o first; `second` must have source first.image.
Morphism compose(const PGroupContext& ctx, const Morphism& second, const Morphism& first);
Morphism inverse(const PGroupContext& ctx, const Morphism& m);
/// c_g restricted to Q for g in P: x -> g^-1 x g.
Morphism conjugation(const PGroupContext& ctx, SubgroupId q, ElemId g);
/// Builds a morphism from generator images, checking it is an injective homomorphism.
Morphism morphism_from_generators(const PGroupContext& ctx, SubgroupId q, std::span<const ElemId> gens,
                                  std::span<const ElemId> images);
/// Hom_S(Q, S): distinct maps induced by conjugation by elements of S.
std::vector<Morphism> inner_homs(const PGroupContext& ctx, SubgroupId base, SubgroupId q);
GroupMorphism to_group_morphism(const PGroupContext& ctx, const Morphism& m, SubgroupId target);

struct ExtensionFailure {
    Morphism phi;
    SubgroupId target = 0;
    SubgroupId n_phi = 0;
};

struct SaturationReport {
    bool sylow_axiom = false;
    std::size_t aut_f_order = 0;
    std::size_t aut_p_order = 0;
    bool extension_axiom = false;
    std::optional<ExtensionFailure> extension_witness;
    std::size_t subgroups_checked = 0;
    std::size_t isomorphisms_checked = 0;

    bool saturated() const noexcept { return sylow_axiom && extension_axiom; }
};

/// A fusion system on a subgroup S (the base) of the context's p-group.
///
/// Either realized by an ambient group (hom-sets computed on demand from
/// subgroup orbits) or given by complete hom-sets (generated systems and
/// subsystems). Values are immutable; the on-demand cache is internally locked.
class FusionSystem {
public:
    static FusionSystem from_homs(ContextPtr ctx, SubgroupId base, std::vector<std::vector<Morphism>> homs);

    const PGroupContext& context() const noexcept { return *ctx_; }
    const ContextPtr& context_ptr() const noexcept { return ctx_; }
    unsigned prime() const noexcept { return ctx_->prime(); }
    SubgroupId base() const noexcept { return base_; }
    const Subgroup& underlying() const { return (*ctx_)[base_]; }
    bool in_base(SubgroupId q) const { return ctx_->contains(base_, q); }
    bool group_realized() const noexcept;
    /// Subgroups of the base, ascending.
    const std::vector<SubgroupId>& subgroups() const noexcept { return subgroups_; }

    /// Hom_F(Q, S), sorted by table.
    const std::vector<Morphism>& homs(SubgroupId q) const;
    /// check_saturation(*this), computed once.
    const SaturationReport& saturation() const;

    struct State;

private:
    friend FusionSystem fusion_of_group(const Subgroup& g, const Subgroup& p);

    ContextPtr ctx_;
    SubgroupId base_ = 0;
    std::vector<SubgroupId> subgroups_;
    std::shared_ptr<State> state_;
};

/// F_P(G). Throws InputError unless P is a Sylow subgroup of G.
FusionSystem fusion_of_group(const Subgroup& g, const Subgroup& p);
FusionSystem fusion_of_group(const GroupPtr& g, unsigned prime);

std::vector<Morphism> hom_set(const FusionSystem& f, SubgroupId q, SubgroupId r);
/// Aut_F(Q).
std::vector<Morphism> automorphisms(const FusionSystem& f, SubgroupId q);
/// Subgroups F-isomorphic to Q, ascending.
std::vector<SubgroupId> f_class(const FusionSystem& f, SubgroupId q);

bool is_fully_normalized(const FusionSystem& f, SubgroupId q);
bool is_fully_centralized(const FusionSystem& f, SubgroupId q);
bool is_centric(const FusionSystem& f, SubgroupId q);
/// O_p(Out_F(Q)) = 1, with Out_F(Q) built as a permutation group on cosets of Aut_Q(Q).
bool is_radical(const FusionSystem& f, SubgroupId q);
/// |Out_F(Q)| and |O_p(Out_F(Q))|.
std::pair<std::size_t, std::size_t> out_profile(const FusionSystem& f, SubgroupId q);

struct NPhiData {
    Morphism phi;
    SubgroupId n_phi = 0;
};

/// N_phi = {x in N_S(Q) : exists y in N_S(phi(Q)), phi(x z x^-1) = y phi(z) y^-1 for all z in Q}.
NPhiData n_phi(const FusionSystem& f, const Morphism& phi);

/// Both saturation axioms. With `reduce`, the extension axiom is checked on
/// one representative per S-conjugacy class of source subgroups.
SaturationReport check_saturation(const FusionSystem& f, bool reduce = true);

/// N_F(Q) on N_S(Q); requires Q fully normalized.
FusionSystem normalizer_system(const FusionSystem& f, SubgroupId q);
/// C_F(Q) on C_S(Q); requires Q fully centralized.
FusionSystem centralizer_system(const FusionSystem& f, SubgroupId q);
/// N_S(Q)C_F(Q) on N_S(Q); requires Q fully centralized.
FusionSystem np_cf(const FusionSystem& f, SubgroupId q);

bool is_weakly_closed(const FusionSystem& f, SubgroupId w);
bool is_strongly_closed(const FusionSystem& f, SubgroupId w);
bool is_normal(const FusionSystem& f, SubgroupId w);

/// O_p(F): the largest subgroup normal in F.
SubgroupId op_subgroup(const FusionSystem& f);
/// Z(F): the largest X <= Z(S) with C_F(X) = F.
SubgroupId center_of_fusion(const FusionSystem& f);
/// Elements of Z(S) fixed by Aut_F(Q) for every Q in the Alperin family.
SubgroupId center_by_fixed_points(const FusionSystem& f);

/// Fully normalized representatives of the F-classes of centric radical subgroups.
std::vector<SubgroupId> alperin_family(const FusionSystem& f);

/// Smallest fusion system on `base` containing Hom_S, every hom-set of every
/// part, and `maps`; closed under composition, restriction and inverses of isomorphisms.
FusionSystem generate(const ContextPtr& ctx, SubgroupId base, std::span<const FusionSystem> parts,
                      std::span<const Morphism> maps = {});

/// Hom-set equality for every pair, screened first by automizers on the Alperin family.
bool equals(const FusionSystem& a, const FusionSystem& b);
/// Hom-set equality for every pair, no screening.
bool same_hom_sets(const FusionSystem& a, const FusionSystem& b);

} // namespace ff
