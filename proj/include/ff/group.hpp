#pragma once

#include "ff/element.hpp"

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace ff {

using ElemId = std::uint32_t;

/// Size bounds. Everything in the engine is exhaustive, so inputs past these
/// bounds fail with CapExceeded instead of running for hours.
struct Caps {
    std::size_t max_order = std::size_t{1} << 21;
    std::size_t max_lattice_order = 2187;
    std::size_t max_orbit = std::size_t{1} << 20;
    std::size_t cayley_table_limit = 4096;
};

/// A finite group held as its full, canonically ordered element list.
///
/// Elements are numbered 0..order-1 in increasing order of their byte
/// encoding, so element ids, and every structure built from them, are
/// independent of the generators used to build the group. Groups of order at
/// most `Caps::cayley_table_limit` also carry a full multiplication table.
class Group {
public:
    static std::shared_ptr<const Group> generate(const ElementShape& shape, std::vector<GroupElement> generators,
                                                 const Caps& caps = {});

    const ElementShape& shape() const noexcept { return shape_; }
    ElementKind kind() const noexcept { return shape_.kind; }
    std::size_t order() const noexcept { return elements_.size(); }
    const Caps& caps() const noexcept { return caps_; }

    const GroupElement& element(ElemId id) const { return elements_[id]; }
    const std::vector<GroupElement>& elements() const noexcept { return elements_; }
    const std::vector<ElemId>& generators() const noexcept { return generators_; }

    std::optional<ElemId> find(const GroupElement& g) const;
    /// Like find, but throws InputError for non-members.
    ElemId index_of(const GroupElement& g) const;

    ElemId identity() const noexcept { return identity_; }
    ElemId mul(ElemId a, ElemId b) const;
    ElemId inv(ElemId a) const { return inverses_[a]; }
    /// g^-1 x g.
    ElemId conj(ElemId x, ElemId g) const;
    /// a^-1 b^-1 a b.
    ElemId commutator(ElemId a, ElemId b) const;
    ElemId pow(ElemId a, unsigned long long e) const;
    unsigned long long element_order(ElemId a) const;
    bool has_table() const noexcept { return !table_.empty(); }

private:
    Group() = default;

    ElementShape shape_;
    Caps caps_;
    std::vector<GroupElement> elements_;
    std::unordered_map<std::string, ElemId> index_;
    std::vector<ElemId> generators_;
    std::vector<ElemId> inverses_;
    std::vector<std::uint16_t> table_;
    ElemId identity_ = 0;
};

using GroupPtr = std::shared_ptr<const Group>;

/// A subgroup of a parent Group, stored as its sorted element-id list.
///
/// Since parent ids follow canonical element order, the sorted id list is the
/// canonical key: two subgroups of the same parent are equal iff their keys are.
class Subgroup {
public:
    Subgroup() = default;
    /// `elements` must be a subgroup of `parent` (not re-verified); sorted on entry.
    Subgroup(GroupPtr parent, std::vector<ElemId> elements, std::vector<ElemId> generators = {});

    static Subgroup whole(const GroupPtr& parent);
    static Subgroup trivial(const GroupPtr& parent);

    const Group& parent() const { return *data_->parent; }
    const GroupPtr& parent_ptr() const { return data_->parent; }

    std::size_t order() const noexcept { return data_->elements.size(); }
    bool is_trivial() const noexcept { return order() == 1; }
    bool contains(ElemId id) const;
    const std::vector<ElemId>& elements() const noexcept { return data_->elements; }
    /// Small generating list (greedy over canonical order when not supplied).
    const std::vector<ElemId>& generators() const;
    /// Position of a member inside elements(); -1 when absent.
    long position(ElemId id) const;

    std::size_t key() const noexcept { return data_->hash; }
    bool is_subgroup_of(const Subgroup& other) const;

    bool operator==(const Subgroup& other) const;
    /// Canonical order: by order, then lexicographically by element ids.
    bool operator<(const Subgroup& other) const;

    std::string describe() const;

private:
    struct Data {
        GroupPtr parent;
        std::vector<ElemId> elements;
        std::vector<std::uint64_t> bits;
        std::size_t hash = 0;
        mutable std::vector<ElemId> generators;
        mutable std::once_flag generators_once;
    };
    std::shared_ptr<Data> data_;
};

struct SubgroupHash {
    std::size_t operator()(const Subgroup& s) const noexcept { return s.key(); }
};

std::size_t hash_ids(std::span<const ElemId> ids) noexcept;

/// Injective homomorphism between subgroups of one parent, stored as a full table.
struct GroupMorphism {
    Subgroup source;
    Subgroup target;
    /// table[k] is the image of source.elements()[k].
    std::vector<ElemId> table;

    ElemId apply(ElemId x) const;
    Subgroup image() const;
    bool is_injective_homomorphism() const;
};

} // namespace ff
