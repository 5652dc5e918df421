#include "ff/group.hpp"

#include "ff/error.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace ff {

std::size_t hash_ids(std::span<const ElemId> ids) noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto id : ids) {
        h ^= id + 0x9e3779b97f4a7c15ULL + (h << 6U) + (h >> 2U);
        h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h ^ ids.size());
}

GroupPtr Group::generate(const ElementShape& shape, std::vector<GroupElement> generators, const Caps& caps) {
    for (const auto& g : generators)
        if (!(g.shape() == shape))
            throw InputError("generator shape does not match the group's element shape");

    // Breadth-first closure under right multiplication by generators.
    std::vector<GroupElement> found;
    std::unordered_map<std::string, ElemId> seen;
    std::vector<ElemId> parent;
    std::vector<std::uint32_t> via;
    std::vector<ElemId> right; // right[i * ngens + s] = bfs index of found[i] * gen[s]

    std::vector<GroupElement> gens;
    for (auto& g : generators) {
        if (g.is_identity())
            continue;
        if (std::find(gens.begin(), gens.end(), g) == gens.end())
            gens.push_back(g);
    }
    const std::size_t ngens = gens.size();

    found.push_back(GroupElement::identity(shape));
    seen.emplace(found.back().encode(), 0);
    parent.push_back(0);
    via.push_back(0);
    for (std::size_t head = 0; head < found.size(); ++head) {
        for (std::size_t s = 0; s < ngens; ++s) {
            GroupElement prod = found[head] * gens[s];
            auto code = prod.encode();
            auto it = seen.find(code);
            ElemId id;
            if (it == seen.end()) {
                if (found.size() >= caps.max_order)
                    throw CapExceeded("group closure exceeds the element cap of " + std::to_string(caps.max_order));
                id = static_cast<ElemId>(found.size());
                seen.emplace(std::move(code), id);
                found.push_back(std::move(prod));
                parent.push_back(static_cast<ElemId>(head));
                via.push_back(static_cast<std::uint32_t>(s));
            } else {
                id = it->second;
            }
            right.push_back(id);
        }
    }

    const std::size_t n = found.size();
    std::vector<std::string> codes(n);
    for (auto& [code, id] : seen)
        codes[id] = code;
    std::vector<ElemId> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](ElemId a, ElemId b) { return codes[a] < codes[b]; });
    std::vector<ElemId> rank(n);
    for (ElemId i = 0; i < n; ++i)
        rank[order[i]] = i;

    std::shared_ptr<Group> group(new Group());
    group->shape_ = shape;
    group->caps_ = caps;
    group->elements_.reserve(n);
    for (ElemId i = 0; i < n; ++i)
        group->elements_.push_back(std::move(found[order[i]]));
    group->index_.reserve(n);
    for (ElemId i = 0; i < n; ++i)
        group->index_.emplace(std::move(codes[order[i]]), i);
    group->identity_ = rank[0];
    for (auto& g : gens)
        group->generators_.push_back(rank[seen.at(g.encode())]);

    if (n <= caps.cayley_table_limit && n <= 65535) {
        // Row a of the table in BFS coordinates: a * j = (a * parent(j)) * gen(j).
        std::vector<ElemId> row(n);
        group->table_.assign(n * n, 0);
        for (ElemId a = 0; a < n; ++a) {
            row[0] = a;
            for (ElemId j = 1; j < n; ++j)
                row[j] = right[row[parent[j]] * ngens + via[j]];
            const std::size_t base = std::size_t{rank[a]} * n;
            for (ElemId j = 0; j < n; ++j)
                group->table_[base + rank[j]] = static_cast<std::uint16_t>(rank[row[j]]);
        }
        group->inverses_.assign(n, 0);
        for (ElemId a = 0; a < n; ++a) {
            const std::size_t base = std::size_t{a} * n;
            for (ElemId b = 0; b < n; ++b)
                if (group->table_[base + b] == group->identity_) {
                    group->inverses_[a] = b;
                    break;
                }
        }
    } else {
        group->inverses_.resize(n);
        for (ElemId a = 0; a < n; ++a)
            group->inverses_[a] = group->index_.at(group->elements_[a].inverse().encode());
    }
    return group;
}

std::optional<ElemId> Group::find(const GroupElement& g) const {
    if (!(g.shape() == shape_))
        return std::nullopt;
    auto it = index_.find(g.encode());
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

ElemId Group::index_of(const GroupElement& g) const {
    auto id = find(g);
    if (!id)
        throw InputError("element " + g.to_string() + " is not a member of the group");
    return *id;
}

ElemId Group::mul(ElemId a, ElemId b) const {
    if (!table_.empty())
        return table_[std::size_t{a} * elements_.size() + b];
    return index_.at((elements_[a] * elements_[b]).encode());
}

ElemId Group::conj(ElemId x, ElemId g) const {
    if (!table_.empty())
        return mul(mul(inverses_[g], x), g);
    return index_.at((elements_[inverses_[g]] * elements_[x] * elements_[g]).encode());
}

ElemId Group::commutator(ElemId a, ElemId b) const {
    return mul(mul(inverses_[a], inverses_[b]), mul(a, b));
}

ElemId Group::pow(ElemId a, unsigned long long e) const {
    ElemId result = identity_;
    ElemId base = a;
    while (e) {
        if (e & 1ULL)
            result = mul(result, base);
        base = mul(base, base);
        e >>= 1U;
    }
    return result;
}

unsigned long long Group::element_order(ElemId a) const {
    unsigned long long k = 1;
    ElemId x = a;
    while (x != identity_) {
        x = mul(x, a);
        ++k;
    }
    return k;
}

namespace {

constexpr std::size_t kBitsetLimit = std::size_t{1} << 16;

// Extends `list` (a subgroup with membership flags) to the subgroup generated by it and `gens`.
void close_in_place(const Group& g, std::vector<char>& member, std::vector<ElemId>& list, std::span<const ElemId> gens) {
    std::size_t head = 0;
    if (list.empty()) {
        list.push_back(g.identity());
        member[g.identity()] = 1;
    }
    while (head < list.size()) {
        ElemId x = list[head++];
        for (auto s : gens) {
            ElemId y = g.mul(x, s);
            if (!member[y]) {
                member[y] = 1;
                list.push_back(y);
            }
        }
    }
}

} // namespace

Subgroup::Subgroup(GroupPtr parent, std::vector<ElemId> elements, std::vector<ElemId> generators)
    : data_(std::make_shared<Data>()) {
    std::sort(elements.begin(), elements.end());
    data_->parent = std::move(parent);
    data_->elements = std::move(elements);
    data_->hash = hash_ids(data_->elements);
    if (data_->parent->order() <= kBitsetLimit) {
        data_->bits.assign((data_->parent->order() + 63) / 64, 0);
        for (auto e : data_->elements)
            data_->bits[e >> 6U] |= std::uint64_t{1} << (e & 63U);
    }
    if (!generators.empty()) {
        data_->generators = std::move(generators);
        std::call_once(data_->generators_once, [] {});
    }
}

Subgroup Subgroup::whole(const GroupPtr& parent) {
    std::vector<ElemId> all(parent->order());
    std::iota(all.begin(), all.end(), 0);
    auto gens = parent->generators();
    if (gens.empty())
        gens.push_back(parent->identity());
    return Subgroup(parent, std::move(all), std::move(gens));
}

Subgroup Subgroup::trivial(const GroupPtr& parent) {
    return Subgroup(parent, {parent->identity()}, {parent->identity()});
}

bool Subgroup::contains(ElemId id) const {
    if (!data_->bits.empty())
        return id < data_->parent->order() && ((data_->bits[id >> 6U] >> (id & 63U)) & 1U);
    return std::binary_search(data_->elements.begin(), data_->elements.end(), id);
}

long Subgroup::position(ElemId id) const {
    auto it = std::lower_bound(data_->elements.begin(), data_->elements.end(), id);
    if (it == data_->elements.end() || *it != id)
        return -1;
    return static_cast<long>(it - data_->elements.begin());
}

const std::vector<ElemId>& Subgroup::generators() const {
    std::call_once(data_->generators_once, [this] {
        const Group& g = *data_->parent;
        std::vector<ElemId> gens;
        if (data_->elements.size() == 1) {
            gens.push_back(g.identity());
        } else {
            std::vector<char> member(g.order(), 0);
            std::vector<ElemId> list;
            close_in_place(g, member, list, gens);
            for (auto e : data_->elements) {
                if (member[e])
                    continue;
                gens.push_back(e);
                close_in_place(g, member, list, gens);
                if (list.size() == data_->elements.size())
                    break;
            }
        }
        data_->generators = std::move(gens);
    });
    return data_->generators;
}

bool Subgroup::is_subgroup_of(const Subgroup& other) const {
    if (order() > other.order() || other.order() % order() != 0)
        return false;
    if (!data_->bits.empty() && !other.data_->bits.empty() && data_->parent == other.data_->parent) {
        for (std::size_t w = 0; w < data_->bits.size(); ++w)
            if (data_->bits[w] & ~other.data_->bits[w])
                return false;
        return true;
    }
    for (auto e : elements())
        if (!other.contains(e))
            return false;
    return true;
}

bool Subgroup::operator==(const Subgroup& other) const {
    if (data_ == other.data_)
        return true;
    return data_->hash == other.data_->hash && data_->elements == other.data_->elements;
}

bool Subgroup::operator<(const Subgroup& other) const {
    if (order() != other.order())
        return order() < other.order();
    return data_->elements < other.data_->elements;
}

std::string Subgroup::describe() const {
    std::string out = "order " + std::to_string(order()) + " <";
    bool first = true;
    for (auto g : generators()) {
        if (!first)
            out += ", ";
        out += parent().element(g).to_string();
        first = false;
    }
    return out + ">";
}

ElemId GroupMorphism::apply(ElemId x) const {
    long pos = source.position(x);
    if (pos < 0)
        throw InputError("element outside the morphism's source");
    return table[static_cast<std::size_t>(pos)];
}

Subgroup GroupMorphism::image() const {
    return Subgroup(source.parent_ptr(), table);
}

bool GroupMorphism::is_injective_homomorphism() const {
    if (table.size() != source.order())
        return false;
    std::vector<ElemId> sorted = table;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        return false;
    for (auto y : table)
        if (!target.contains(y))
            return false;
    const Group& g = source.parent();
    const auto& els = source.elements();
    for (std::size_t i = 0; i < els.size(); ++i)
        for (std::size_t j = 0; j < els.size(); ++j) {
            long k = source.position(g.mul(els[i], els[j]));
            if (k < 0 || table[static_cast<std::size_t>(k)] != g.mul(table[i], table[j]))
                return false;
        }
    return true;
}

} // namespace ff
