#pragma once

#include "ff/group.hpp"

#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

namespace ff {

// ---- Arithmetic helpers -----------------------------------------------------

struct PrimePower {
    unsigned prime = 0;
    unsigned exponent = 0;
};

/// Decomposes n = p^k with k >= 1; nullopt for 1 and for non prime powers.
std::optional<PrimePower> prime_power(unsigned long long n);
bool is_prime(unsigned long long n);
unsigned long long p_part(unsigned long long n, unsigned p);
unsigned long long ipow(unsigned long long base, unsigned e);

/// The prime of a nontrivial p-subgroup; throws InputError on mixed orders.
/// Returns `fallback` for the trivial subgroup.
unsigned prime_of(const Subgroup& h, unsigned fallback = 0);

// ---- Subgroup construction --------------------------------------------------

Subgroup closure(const GroupPtr& parent, std::span<const ElemId> generators);
Subgroup join(const Subgroup& a, const Subgroup& b);
Subgroup intersection(const Subgroup& a, const Subgroup& b);
Subgroup conjugate(const Subgroup& s, ElemId g);
Subgroup normal_closure(const Subgroup& s, const Subgroup& ambient);

bool normalizes(ElemId g, const Subgroup& target);
bool is_normal_in(const Subgroup& n, const Subgroup& h);
bool is_abelian(const Subgroup& h);

Subgroup centralizer(const Subgroup& ambient, const Subgroup& target);
Subgroup normalizer(const Subgroup& ambient, const Subgroup& target);
Subgroup center(const Subgroup& h);

/// [A, B], generated by all commutators [a, b] = a^-1 b^-1 a b.
Subgroup commutator_subgroup(const Subgroup& a, const Subgroup& b);
Subgroup derived_subgroup(const Subgroup& h);

// ---- p-group structure ------------------------------------------------------

struct CentralSeriesData {
    /// Z^0 = 1 <= Z^1 = Z(H) <= ... ; ends at H when H is nilpotent.
    std::vector<Subgroup> upper;
    /// H = gamma_1 >= gamma_2 >= ... ; ends at 1 when H is nilpotent.
    std::vector<Subgroup> lower;
    /// Absent when H is not nilpotent.
    std::optional<unsigned> nilpotence_class;

    bool nilpotent() const noexcept { return nilpotence_class.has_value(); }
};

CentralSeriesData central_series(const Subgroup& h);
/// Class of a nilpotent subgroup; throws InputError otherwise.
unsigned nilpotence_class(const Subgroup& h);

/// <x^(p^n) : x in H>. agemo(H, 0) = H.
Subgroup agemo(const Subgroup& h, unsigned n);
/// <x in H : x^(p^n) = 1>. omega(H, 0) = 1.
Subgroup omega(const Subgroup& h, unsigned n);
unsigned long long exponent(const Subgroup& h);

/// [A, x; k]: [A, x; 1] = <[a, x] : a in A>, [A, x; k] = [[A, x; k-1], x].
Subgroup iterated_commutator(const Subgroup& a, ElemId x, unsigned k);

// ---- Lattice ----------------------------------------------------------------

using SubgroupId = std::uint32_t;

/// Every subgroup of a finite p-group, built bottom-up: each subgroup of order
/// p^(k+1) is <H, g> for a subgroup H of order p^k and g in N(H) with g^p in H.
///
/// Ids follow canonical order (order first, then element ids), so id 0 is the
/// trivial subgroup and the last id is the whole group.
class SubgroupLattice {
public:
    explicit SubgroupLattice(const Subgroup& top);

    const Subgroup& top() const noexcept { return subgroups_.back(); }
    unsigned prime() const noexcept { return prime_; }
    std::size_t size() const noexcept { return subgroups_.size(); }
    const Subgroup& operator[](SubgroupId id) const { return subgroups_[id]; }
    const std::vector<Subgroup>& subgroups() const noexcept { return subgroups_; }

    std::optional<SubgroupId> find(const Subgroup& s) const;
    std::optional<SubgroupId> find(std::span<const ElemId> sorted_elements) const;
    SubgroupId id_of(const Subgroup& s) const;
    SubgroupId id_of(std::span<const ElemId> sorted_elements) const;

    /// Subgroups containing `id` with index p.
    const std::vector<SubgroupId>& covers_above(SubgroupId id) const { return above_[id]; }
    /// Subgroups of `id` with index p.
    const std::vector<SubgroupId>& covers_below(SubgroupId id) const { return below_[id]; }

private:
    unsigned prime_ = 0;
    std::vector<Subgroup> subgroups_;
    std::unordered_map<std::size_t, std::vector<SubgroupId>> by_hash_;
    std::vector<std::vector<SubgroupId>> above_;
    std::vector<std::vector<SubgroupId>> below_;
};

std::vector<Subgroup> all_subgroups(const Subgroup& p);

/// J(H): generated by the abelian subgroups of maximal order.
Subgroup thompson_subgroup(const Subgroup& h);
Subgroup thompson_subgroup(const SubgroupLattice& lattice);

// ---- Sylow, orbits, ordering --------------------------------------------------

/// A Sylow p-subgroup grown from a cyclic subgroup of order p by repeatedly
/// adjoining a p-element of the normalizer.
Subgroup sylow(const Subgroup& g, unsigned p);

/// Conjugacy orbit of a subgroup under the generators of `ambient`.
struct SubgroupOrbit {
    std::vector<Subgroup> members;
    /// witnesses[i] conjugates members[0] onto members[i] (x -> g^-1 x g).
    std::vector<ElemId> witnesses;
    /// Schreier generators of the stabilizer N_ambient(members[0]).
    std::vector<ElemId> stabilizer_generators;

    std::optional<std::size_t> index_of(const Subgroup& s) const;
    Subgroup stabilizer(const GroupPtr& parent) const;

    std::unordered_map<std::size_t, std::vector<std::size_t>> by_hash;
};

SubgroupOrbit subgroup_orbit(const Subgroup& ambient, const Subgroup& q);

enum class ThompsonOrder { less, equal_rank, greater };

/// Compares (|N_P(Q)|, |Q|) lexicographically.
ThompsonOrder thompson_compare(const Subgroup& p, const Subgroup& q1, const Subgroup& q2);

} // namespace ff
