#include "ff/catalog.hpp"

#include "ff/error.hpp"
#include "ff/structure.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

namespace ff {

namespace {

using json = nlohmann::json;

Permutation cycle_on(std::size_t degree, std::vector<int> points) {
    return Permutation::from_cycles(degree, {std::move(points)});
}

void require(bool ok, const std::string& message) {
    if (!ok)
        throw InputError(message);
}

long long param(const CatalogForm& c, std::size_t i) {
    require(c.params.size() > i, c.name + " needs at least " + std::to_string(i + 1) + " parameter(s)");
    return c.params[i];
}

void require_param_count(const CatalogForm& c, std::size_t n) {
    require(c.params.size() == n, c.name + " takes exactly " + std::to_string(n) + " parameter(s)");
}

unsigned primitive_root(unsigned p) {
    for (unsigned g = 1; g < p; ++g) {
        unsigned x = 1;
        unsigned k = 0;
        do {
            x = x * g % p;
            ++k;
        } while (x != 1);
        if (k == p - 1)
            return g;
    }
    return 1;
}

std::vector<GroupElement> linear_generators(unsigned d, unsigned p, bool special) {
    std::vector<GroupElement> gens;
    auto make = [&](auto&& fill) {
        std::vector<std::uint8_t> e(d * d, 0);
        for (unsigned i = 0; i < d; ++i)
            e[i * d + i] = 1;
        fill(e);
        gens.emplace_back(Matrix(p, d, std::move(e)));
    };
    for (unsigned i = 0; i + 1 < d; ++i) {
        make([&](auto& e) { e[i * d + i + 1] = 1; });
        make([&](auto& e) { e[(i + 1) * d + i] = 1; });
    }
    const unsigned w = primitive_root(p);
    if (!special && w != 1)
        make([&](auto& e) { e[0] = static_cast<std::uint8_t>(w); });
    if (gens.empty())
        gens.emplace_back(Matrix::identity(p, d));
    return gens;
}

struct Construction {
    ElementShape shape;
    std::vector<GroupElement> generators;
    std::optional<WreathData> wreath;
    // Wreath distinguished elements before the group exists.
    std::vector<GroupElement> wreath_base;
    std::optional<GroupElement> wreath_x;
};

Construction construct(const GroupSpec& spec);

Construction construct_catalog(const CatalogForm& c) {
    Construction out;
    const std::string& name = c.name;
    if (name == "sym" || name == "alt" || name == "cyclic") {
        require_param_count(c, 1);
        const long long n = param(c, 0);
        require(n >= 1 && n <= 4096, name + " degree must lie in 1..4096");
        const auto deg = static_cast<std::size_t>(n);
        out.shape = {ElementKind::permutation, static_cast<unsigned>(n), 0};
        std::vector<int> all(deg);
        for (std::size_t i = 0; i < deg; ++i)
            all[i] = static_cast<int>(i + 1);
        if (name == "cyclic") {
            if (n > 1)
                out.generators.emplace_back(cycle_on(deg, all));
        } else if (name == "sym") {
            if (n > 1) {
                out.generators.emplace_back(cycle_on(deg, {1, 2}));
                out.generators.emplace_back(cycle_on(deg, all));
            }
        } else if (n >= 3) {
            out.generators.emplace_back(cycle_on(deg, {1, 2, 3}));
            if (n > 3) {
                if (n % 2 == 1)
                    out.generators.emplace_back(cycle_on(deg, all));
                else
                    out.generators.emplace_back(cycle_on(deg, std::vector<int>(all.begin() + 1, all.end())));
            }
        }
        return out;
    }
    if (name == "dihedral") {
        require_param_count(c, 1);
        const long long order = param(c, 0);
        require(order >= 2 && order % 2 == 0 && order <= 8192, "dihedral order must be even, in 2..8192");
        const auto m = static_cast<int>(order / 2);
        if (m == 1) {
            out.shape = {ElementKind::permutation, 2, 0};
            out.generators.emplace_back(cycle_on(2, {1, 2}));
        } else if (m == 2) {
            out.shape = {ElementKind::permutation, 4, 0};
            out.generators.emplace_back(Permutation::from_cycles(4, {{1, 2}, {3, 4}}));
            out.generators.emplace_back(Permutation::from_cycles(4, {{1, 3}, {2, 4}}));
        } else {
            out.shape = {ElementKind::permutation, static_cast<unsigned>(m), 0};
            std::vector<int> all(static_cast<std::size_t>(m));
            for (int i = 0; i < m; ++i)
                all[static_cast<std::size_t>(i)] = i + 1;
            out.generators.emplace_back(cycle_on(static_cast<std::size_t>(m), all));
            std::vector<std::vector<int>> swaps;
            for (int i = 2, j = m; i < j; ++i, --j)
                swaps.push_back({i, j});
            out.generators.emplace_back(Permutation::from_cycles(static_cast<std::size_t>(m), swaps));
        }
        return out;
    }
    if (name == "quaternion") {
        require_param_count(c, 1);
        const long long order = param(c, 0);
        auto pp = prime_power(static_cast<unsigned long long>(std::max(order, 0LL)));
        require(pp && pp->prime == 2 && pp->exponent >= 3 && order <= 4096,
                "quaternion order must be a power of 2 in 8..4096");
        // Q = <a, b | a^(2m), b^2 = a^m, b^-1 a b = a^-1>; element a^i b^j has index i + 2m j.
        const int m2 = static_cast<int>(order / 2);
        const int m = m2 / 2;
        auto idx = [&](int i, int j) { return ((i % m2) + m2) % m2 + m2 * j; };
        auto times_a = [&](int i, int j) { return j == 0 ? idx(i + 1, 0) : idx(i - 1, 1); };
        auto times_b = [&](int i, int j) { return j == 0 ? idx(i, 1) : idx(i + m, 0); };
        std::vector<std::uint16_t> pa(static_cast<std::size_t>(order)), pb(static_cast<std::size_t>(order));
        for (int j = 0; j < 2; ++j)
            for (int i = 0; i < m2; ++i) {
                pa[static_cast<std::size_t>(idx(i, j))] = static_cast<std::uint16_t>(times_a(i, j));
                pb[static_cast<std::size_t>(idx(i, j))] = static_cast<std::uint16_t>(times_b(i, j));
            }
        out.shape = {ElementKind::permutation, static_cast<unsigned>(order), 0};
        out.generators.emplace_back(Permutation(std::move(pa)));
        out.generators.emplace_back(Permutation(std::move(pb)));
        return out;
    }
    if (name == "wreath_cyclic") {
        require_param_count(c, 2);
        const long long p = param(c, 0);
        const long long n = param(c, 1);
        require(p >= 2 && p < 256 && is_prime(static_cast<unsigned long long>(p)), "wreath_cyclic needs a prime p");
        require(n >= 1 && n <= 16, "wreath_cyclic needs n >= 1");
        const unsigned long long block = ipow(static_cast<unsigned long long>(p), static_cast<unsigned>(n));
        require(block * static_cast<unsigned long long>(p) <= 65535, "wreath_cyclic degree too large");
        const auto deg = static_cast<std::size_t>(block * static_cast<unsigned long long>(p));
        out.shape = {ElementKind::permutation, static_cast<unsigned>(deg), 0};
        // Point (i, j) of block i, position j, is numbered i * block + j (0-based).
        for (long long i = 0; i < p; ++i) {
            std::vector<std::uint16_t> img(deg);
            for (std::size_t q = 0; q < deg; ++q)
                img[q] = static_cast<std::uint16_t>(q);
            for (unsigned long long j = 0; j < block; ++j)
                img[static_cast<std::size_t>(i * block + j)] =
                    static_cast<std::uint16_t>(i * block + (j + 1) % block);
            out.wreath_base.emplace_back(Permutation(std::move(img)));
        }
        std::vector<std::uint16_t> img(deg);
        for (std::size_t q = 0; q < deg; ++q)
            img[q] = static_cast<std::uint16_t>((q + block) % deg);
        out.wreath_x = GroupElement(Permutation(std::move(img)));
        out.generators.push_back(out.wreath_base.front());
        out.generators.push_back(*out.wreath_x);
        out.wreath = WreathData{static_cast<unsigned>(p), static_cast<unsigned>(n), 0, {}, {}};
        return out;
    }
    if (name == "gl" || name == "sl") {
        require_param_count(c, 2);
        const long long d = param(c, 0);
        const long long p = param(c, 1);
        require(d >= 1 && d <= 16, name + " dimension must lie in 1..16");
        require(p >= 2 && p < 256 && is_prime(static_cast<unsigned long long>(p)),
                name + " is provided over prime fields only");
        out.shape = {ElementKind::matrix, static_cast<unsigned>(d), static_cast<unsigned>(p)};
        out.generators = linear_generators(static_cast<unsigned>(d), static_cast<unsigned>(p), name == "sl");
        return out;
    }
    if (name == "direct_product") {
        require(c.params.empty(), "direct_product takes factors, not params");
        require(!c.factors.empty(), "direct_product needs at least one factor");
        std::vector<Construction> parts;
        std::size_t degree = 0;
        for (const auto& f : c.factors) {
            parts.push_back(construct(f));
            require(parts.back().shape.kind == ElementKind::permutation,
                    "direct_product supports permutation factors only");
            degree += parts.back().shape.degree;
        }
        require(degree <= 65535, "direct_product degree too large");
        out.shape = {ElementKind::permutation, static_cast<unsigned>(degree), 0};
        std::size_t offset = 0;
        for (const auto& part : parts) {
            for (const auto& g : part.generators) {
                std::vector<std::uint16_t> img(degree);
                for (std::size_t q = 0; q < degree; ++q)
                    img[q] = static_cast<std::uint16_t>(q);
                const auto& src = g.permutation().images();
                for (std::size_t q = 0; q < src.size(); ++q)
                    img[offset + q] = static_cast<std::uint16_t>(offset + src[q]);
                out.generators.emplace_back(Permutation(std::move(img)));
            }
            offset += part.shape.degree;
        }
        return out;
    }
    throw InputError("unknown catalog family '" + name + "'");
}

Construction construct(const GroupSpec& spec) {
    if (const auto* c = std::get_if<CatalogForm>(&spec.form))
        return construct_catalog(*c);
    const auto& e = std::get<ExplicitForm>(spec.form);
    Construction out;
    out.shape = e.shape;
    out.generators = e.generators;
    return out;
}

} // namespace

GroupSpec GroupSpec::catalog(std::string name, std::vector<long long> params) {
    return GroupSpec{CatalogForm{std::move(name), std::move(params), {}}};
}

GroupSpec GroupSpec::product(std::vector<GroupSpec> factors) {
    return GroupSpec{CatalogForm{"direct_product", {}, std::move(factors)}};
}

GroupSpec GroupSpec::explicit_group(ElementShape shape, std::vector<GroupElement> generators) {
    return GroupSpec{ExplicitForm{shape, std::move(generators)}};
}

std::string GroupSpec::label() const {
    if (const auto* c = std::get_if<CatalogForm>(&form)) {
        std::string out = c->name + "(";
        if (c->name == "direct_product") {
            for (std::size_t i = 0; i < c->factors.size(); ++i)
                out += (i ? " x " : "") + c->factors[i].label();
        } else {
            for (std::size_t i = 0; i < c->params.size(); ++i)
                out += (i ? "," : "") + std::to_string(c->params[i]);
        }
        return out + ")";
    }
    const auto& e = std::get<ExplicitForm>(form);
    return "explicit(" + std::string(e.shape.kind == ElementKind::permutation ? "perm" : "matrix") + "," +
           std::to_string(e.shape.degree) + "," + std::to_string(e.generators.size()) + " gens)";
}

BuiltGroup build(const GroupSpec& spec, const Caps& caps) {
    if (auto expected = expected_order(spec); expected && *expected > caps.max_order)
        throw CapExceeded(spec.label() + " has order " + std::to_string(*expected) + " above the element cap of " +
                          std::to_string(caps.max_order));
    Construction c = construct(spec);
    BuiltGroup out;
    out.spec = spec;
    out.group = Group::generate(c.shape, c.generators, caps);
    if (c.wreath) {
        WreathData w = *c.wreath;
        const Group& g = *out.group;
        w.x = g.index_of(*c.wreath_x);
        for (const auto& b : c.wreath_base)
            w.base.push_back(g.index_of(b));
        for (std::size_t i = 0; i + 1 < w.base.size(); ++i)
            w.derived.push_back(g.mul(w.base[i], g.inv(w.base[i + 1])));
        out.wreath = std::move(w);
    }
    return out;
}

std::optional<unsigned long long> expected_order(const GroupSpec& spec) {
    const auto* c = std::get_if<CatalogForm>(&spec.form);
    if (!c)
        return std::nullopt;
    auto factorial = [](long long n) {
        unsigned long long f = 1;
        for (long long i = 2; i <= n; ++i) {
            if (f > (1ULL << 50))
                return f;
            f *= static_cast<unsigned long long>(i);
        }
        return f;
    };
    auto p_at = [&](std::size_t i) { return i < c->params.size() ? c->params[i] : 0; };
    if (c->name == "sym")
        return factorial(p_at(0));
    if (c->name == "alt")
        return p_at(0) <= 1 ? 1 : factorial(p_at(0)) / 2;
    if (c->name == "cyclic" || c->name == "dihedral" || c->name == "quaternion")
        return static_cast<unsigned long long>(std::max(p_at(0), 1LL));
    if (c->name == "wreath_cyclic") {
        const auto p = static_cast<unsigned long long>(p_at(0));
        const auto n = static_cast<unsigned>(std::max(p_at(1), 0LL));
        if (p < 2 || n * p + 1 > 62)
            return std::nullopt;
        long double v = std::pow(static_cast<long double>(p), static_cast<long double>(n * p + 1));
        if (v > 1e18L)
            return static_cast<unsigned long long>(1e18);
        return ipow(p, static_cast<unsigned>(n * p + 1));
    }
    if (c->name == "gl" || c->name == "sl") {
        const auto d = static_cast<unsigned>(std::max(p_at(0), 0LL));
        const auto q = static_cast<unsigned long long>(std::max(p_at(1), 0LL));
        if (q < 2)
            return std::nullopt;
        long double approx = 1;
        unsigned long long order = 1;
        const unsigned long long qd = d < 40 ? ipow(q, d) : 0;
        for (unsigned i = 0; i < d; ++i) {
            approx *= static_cast<long double>(qd) - static_cast<long double>(ipow(q, i));
            if (approx > 1e18L)
                return static_cast<unsigned long long>(1e18);
            order *= qd - ipow(q, i);
        }
        return c->name == "sl" ? order / (q - 1) : order;
    }
    if (c->name == "direct_product") {
        unsigned long long order = 1;
        for (const auto& f : c->factors) {
            auto o = expected_order(f);
            if (!o)
                return std::nullopt;
            order *= *o;
        }
        return order;
    }
    return std::nullopt;
}

WreathStructure wreath_structure(const BuiltGroup& built) {
    if (!built.wreath)
        throw InputError("group was not built by wreath_cyclic");
    const auto& w = *built.wreath;
    WreathStructure out;
    out.x = w.x;
    out.base_generators = w.base;
    out.derived_generators = w.derived;
    out.derived = derived_subgroup(Subgroup::whole(built.group));
    return out;
}

json parse_document(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
}

json read_document(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return parse_document(buf.str());
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

namespace {

const json& field(const json& obj, const char* key, const std::string& where) {
    if (!obj.is_object() || !obj.contains(key))
        throw InputError(where + ": missing field '" + key + "'");
    return obj.at(key);
}

long long as_int(const json& v, const std::string& where) {
    if (!v.is_number_integer())
        throw InputError(where + ": expected an integer");
    return v.get<long long>();
}

} // namespace

GroupElement element_from_json(const json& doc, const ElementShape& shape) {
    if (shape.kind == ElementKind::permutation) {
        if (!doc.is_array())
            throw InputError("permutation must be an array of images");
        std::vector<long long> images;
        for (const auto& v : doc)
            images.push_back(as_int(v, "permutation image"));
        if (images.size() != shape.degree)
            throw InputError("permutation has " + std::to_string(images.size()) + " images, degree is " +
                             std::to_string(shape.degree));
        return Permutation::from_one_based(images);
    }
    if (!doc.is_array() || doc.size() != shape.degree)
        throw InputError("matrix must be an array of " + std::to_string(shape.degree) + " rows");
    std::vector<std::uint8_t> entries;
    for (const auto& row : doc) {
        if (!row.is_array() || row.size() != shape.degree)
            throw InputError("matrix row has the wrong length");
        for (const auto& v : row) {
            long long e = as_int(v, "matrix entry");
            if (e < 0 || e >= static_cast<long long>(shape.field))
                throw InputError("matrix entry outside 0..p-1");
            entries.push_back(static_cast<std::uint8_t>(e));
        }
    }
    return Matrix(shape.field, shape.degree, std::move(entries));
}

json element_to_json(const GroupElement& g) {
    if (g.kind() == ElementKind::permutation)
        return g.permutation().one_based();
    const auto& m = g.matrix();
    json rows = json::array();
    for (unsigned i = 0; i < m.dimension(); ++i) {
        json row = json::array();
        for (unsigned j = 0; j < m.dimension(); ++j)
            row.push_back(m.at(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

GroupSpec group_spec_from_json(const json& doc) {
    if (!doc.is_object())
        throw InputError("group spec must be an object");
    if (doc.contains("catalog")) {
        const auto& c = doc.at("catalog");
        CatalogForm form;
        const auto& name = field(c, "name", "catalog");
        if (!name.is_string())
            throw InputError("catalog.name must be a string");
        form.name = name.get<std::string>();
        if (c.contains("params")) {
            if (!c.at("params").is_array())
                throw InputError("catalog.params must be an array");
            for (const auto& v : c.at("params"))
                form.params.push_back(as_int(v, "catalog.params"));
        }
        if (c.contains("factors")) {
            if (!c.at("factors").is_array())
                throw InputError("catalog.factors must be an array");
            for (const auto& f : c.at("factors"))
                form.factors.push_back(group_spec_from_json(f));
        }
        static const char* known[] = {"sym", "alt",          "cyclic", "dihedral", "quaternion",
                                      "wreath_cyclic", "gl", "sl",     "direct_product"};
        if (std::find_if(std::begin(known), std::end(known), [&](const char* k) { return form.name == k; }) ==
            std::end(known))
            throw InputError("unknown catalog family '" + form.name + "'");
        return GroupSpec{std::move(form)};
    }
    if (doc.contains("explicit")) {
        const auto& e = doc.at("explicit");
        const auto& kind = field(e, "kind", "explicit");
        ExplicitForm form;
        if (kind == "permutation") {
            long long degree = as_int(field(e, "degree", "explicit"), "explicit.degree");
            if (degree < 1 || degree > 65535)
                throw InputError("explicit.degree must lie in 1..65535");
            form.shape = {ElementKind::permutation, static_cast<unsigned>(degree), 0};
        } else if (kind == "matrix") {
            long long dim = as_int(field(e, "dimension", "explicit"), "explicit.dimension");
            long long p = as_int(field(e, "field", "explicit"), "explicit.field");
            if (dim < 1 || dim > 16 || p < 2 || p > 251 || !is_prime(static_cast<unsigned long long>(p)))
                throw InputError("explicit matrix group needs dimension 1..16 and a prime field below 256");
            form.shape = {ElementKind::matrix, static_cast<unsigned>(dim), static_cast<unsigned>(p)};
        } else {
            throw InputError("explicit.kind must be 'permutation' or 'matrix'");
        }
        const auto& gens = field(e, "generators", "explicit");
        if (!gens.is_array())
            throw InputError("explicit.generators must be an array");
        for (const auto& g : gens)
            form.generators.push_back(element_from_json(g, form.shape));
        return GroupSpec{std::move(form)};
    }
    throw InputError("group spec needs a 'catalog' or 'explicit' member");
}

json to_json(const GroupSpec& spec) {
    if (const auto* c = std::get_if<CatalogForm>(&spec.form)) {
        json body = {{"name", c->name}};
        if (c->factors.empty()) {
            body["params"] = c->params;
        } else {
            json factors = json::array();
            for (const auto& f : c->factors)
                factors.push_back(to_json(f));
            body["factors"] = std::move(factors);
        }
        return {{"catalog", std::move(body)}};
    }
    const auto& e = std::get<ExplicitForm>(spec.form);
    json body;
    if (e.shape.kind == ElementKind::permutation) {
        body = {{"kind", "permutation"}, {"degree", e.shape.degree}};
    } else {
        body = {{"kind", "matrix"}, {"dimension", e.shape.degree}, {"field", e.shape.field}};
    }
    json gens = json::array();
    for (const auto& g : e.generators)
        gens.push_back(element_to_json(g));
    body["generators"] = std::move(gens);
    return {{"explicit", std::move(body)}};
}

json serialize(const Group& g) {
    std::vector<GroupElement> gens;
    for (auto id : g.generators())
        gens.push_back(g.element(id));
    return to_json(GroupSpec::explicit_group(g.shape(), std::move(gens)));
}

GroupPtr deserialize(const json& doc, const Caps& caps) { return build(group_spec_from_json(doc), caps).group; }

} // namespace ff
