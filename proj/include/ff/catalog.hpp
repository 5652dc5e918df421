#pragma once

#include "ff/group.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ff {

struct GroupSpec;

/// One of the named families: sym(n), alt(n), cyclic(n), dihedral(2m),
/// quaternion(2^k), wreath_cyclic(p, n), gl(d, p), sl(d, p), direct_product.
struct CatalogForm {
    std::string name;
    std::vector<long long> params;
    /// Only used by direct_product.
    std::vector<GroupSpec> factors;
};

struct ExplicitForm {
    ElementShape shape;
    std::vector<GroupElement> generators;
};

struct GroupSpec {
    std::variant<CatalogForm, ExplicitForm> form;

    static GroupSpec catalog(std::string name, std::vector<long long> params);
    static GroupSpec product(std::vector<GroupSpec> factors);
    static GroupSpec explicit_group(ElementShape shape, std::vector<GroupElement> generators);

    std::string label() const;
};

/// Distinguished elements of C_{p^n} wr C_p, fixed at construction.
struct WreathData {
    unsigned p = 0;
    unsigned n = 0;
    /// Block permutation of order p (the wreathing element).
    ElemId x = 0;
    /// b_1..b_p: the p^n-cycle on each block; x^-1 b_i x = b_{i+1}.
    std::vector<ElemId> base;
    /// a_i = b_i b_{i+1}^-1 for i = 1..p-1. Conjugation by x sends a_i to
    /// a_{i+1} and a_{p-1} to (a_1 ... a_{p-1})^-1.
    std::vector<ElemId> derived;
};

struct BuiltGroup {
    GroupPtr group;
    GroupSpec spec;
    std::optional<WreathData> wreath;
};

BuiltGroup build(const GroupSpec& spec, const Caps& caps = {});

/// Closed-form order of a catalog family member; nullopt for explicit specs.
std::optional<unsigned long long> expected_order(const GroupSpec& spec);

struct WreathStructure {
    ElemId x = 0;
    std::vector<ElemId> base_generators;
    std::vector<ElemId> derived_generators;
    Subgroup derived;
};

WreathStructure wreath_structure(const BuiltGroup& built);

// ---- Documents ----------------------------------------------------------------

/// Parses JSON text; syntax errors become InputError carrying line and column.
nlohmann::json parse_document(std::string_view text);
nlohmann::json read_document(const std::string& path);

GroupSpec group_spec_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const GroupSpec& spec);

GroupElement element_from_json(const nlohmann::json& doc, const ElementShape& shape);
nlohmann::json element_to_json(const GroupElement& g);

/// A group as an explicit generator document.
nlohmann::json serialize(const Group& g);
GroupPtr deserialize(const nlohmann::json& doc, const Caps& caps = {});

} // namespace ff
