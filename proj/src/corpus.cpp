#include "ff/theorems.hpp"

#include "ff/error.hpp"

#include <algorithm>

namespace ff {

namespace {

using nlohmann::json;

const json& field(const json& obj, const char* key, const std::string& where) {
    if (!obj.is_object() || !obj.contains(key))
        throw InputError(where + ": missing field '" + key + "'");
    return obj.at(key);
}

unsigned as_prime(const json& v, const std::string& where) {
    if (!v.is_number_integer() || v.get<long long>() < 2 || !is_prime(v.get<unsigned long long>()))
        throw InputError(where + ": prime must be a prime integer");
    return v.get<unsigned>();
}

ElemId element_in(const Group& g, const json& doc, const std::string& where) {
    auto id = g.find(element_from_json(doc, g.shape()));
    if (!id)
        throw InputError(where + ": element " + doc.dump() + " is not in the group");
    return *id;
}

Caps caps_from_json(const json& doc) {
    Caps caps;
    if (doc.is_null())
        return caps;
    if (!doc.is_object())
        throw InputError("caps must be an object");
    auto read = [&](const char* key, std::size_t& slot) {
        if (doc.contains(key)) {
            if (!doc.at(key).is_number_unsigned())
                throw InputError(std::string("caps.") + key + " must be a positive integer");
            slot = doc.at(key).get<std::size_t>();
        }
    };
    read("max_order", caps.max_order);
    read("max_lattice_order", caps.max_lattice_order);
    read("max_orbit", caps.max_orbit);
    return caps;
}

VerificationReport error_report(const std::string& id, const std::string& instance, std::exception_ptr e) {
    VerificationReport r;
    r.result_id = id;
    r.instance = instance;
    r.conclusion = "not evaluated";
    try {
        std::rethrow_exception(e);
    } catch (const CapExceeded& x) {
        r.error = x.what();
        r.error_kind = "cap";
    } catch (const PreconditionError& x) {
        r.error = x.what();
        r.error_kind = "precondition";
    } catch (const InputError& x) {
        r.error = x.what();
        r.error_kind = "input";
    } catch (const std::exception& x) {
        r.error = x.what();
        r.error_kind = "internal";
    }
    r.settle();
    return r;
}

} // namespace

FusionInstance fusion_from_json(const json& doc, const Caps& caps) {
    if (doc.is_object() && doc.contains("group_realized")) {
        const json& body = doc.at("group_realized");
        const std::string where = "group_realized";
        BuiltGroup built = build(group_spec_from_json(field(body, "group", where)), caps);
        const unsigned p = as_prime(field(body, "prime", where), where);
        const Subgroup whole = Subgroup::whole(built.group);
        Subgroup sylow_p;
        if (body.contains("sylow_generators")) {
            std::vector<ElemId> gens;
            for (const auto& e : body.at("sylow_generators"))
                gens.push_back(element_in(*built.group, e, where + ".sylow_generators"));
            sylow_p = closure(built.group, gens);
            if (prime_of(sylow_p, p) != p)
                throw InputError(where + ": sylow_generators do not generate a " + std::to_string(p) + "-group");
        } else {
            sylow_p = sylow(whole, p);
        }
        FusionSystem f = fusion_of_group(whole, sylow_p);
        std::string label = "F_P(" + built.spec.label() + "), p=" + std::to_string(p);
        return FusionInstance{std::move(built), std::move(f), std::move(label)};
    }
    if (doc.is_object() && doc.contains("generated")) {
        const json& body = doc.at("generated");
        const std::string where = "generated";
        BuiltGroup built = build(group_spec_from_json(field(body, "p_group", where)), caps);
        auto ctx = PGroupContext::create(Subgroup::whole(built.group));
        const Group& g = *ctx->group();
        std::vector<Morphism> maps;
        if (body.contains("automorphisms")) {
            const json& list = body.at("automorphisms");
            if (!list.is_array())
                throw InputError(where + ".automorphisms must be an array");
            for (const auto& entry : list) {
                std::vector<ElemId> gens;
                for (const auto& e : field(entry, "subgroup_generators", where))
                    gens.push_back(element_in(g, e, where + ".subgroup_generators"));
                const SubgroupId q = ctx->id_of(closure(ctx->group(), gens));
                for (const auto& images_doc : field(entry, "maps", where)) {
                    std::vector<ElemId> images;
                    for (const auto& e : images_doc)
                        images.push_back(element_in(g, e, where + ".maps"));
                    maps.push_back(morphism_from_generators(*ctx, q, gens, images));
                }
            }
        }
        FusionSystem f = generate(ctx, ctx->top(), {}, maps);
        std::string label = "generated on " + built.spec.label();
        return FusionInstance{std::move(built), std::move(f), std::move(label)};
    }
    throw InputError("fusion document needs a 'group_realized' or 'generated' object");
}

const std::vector<std::string>& verifier_ids() {
    static const std::vector<std::string> ids = {
        "saturation",   "alperin-regeneration", "lemma-goldcent",     "lemma-goldj",
        "prop-equivnorm", "prop-poschar",       "theorem-norm",       "theorem-main",
        "corollary-exponent", "theorem-fact",   "prop-frattini",      "example-sharpness",
        "theorem-maingrp",
    };
    return ids;
}

std::vector<VerificationReport> run_verifier(const std::string& id, const FusionInstance& inst,
                                             std::optional<unsigned> n, const Caps& caps) {
    const FusionSystem& f = inst.fusion;
    std::vector<VerificationReport> out;
    auto finish = [&](VerificationReport r) {
        r.instance = inst.label + " (" + r.instance + ")";
        out.push_back(std::move(r));
    };
    try {
        const auto& ctx = f.context();
        const unsigned p = f.prime();
        const unsigned tight = tightest_n(nilpotence_class(f.underlying()), p);
        const unsigned use_n = n.value_or(tight);
        if (id == "saturation") {
            finish(verify_saturation(f));
        } else if (id == "alperin-regeneration") {
            finish(verify_alperin_regeneration(f));
        } else if (id == "lemma-goldcent") {
            finish(verify_goldcent(f.underlying(), use_n));
        } else if (id == "lemma-goldj") {
            finish(verify_goldj(f.underlying()));
        } else if (id == "prop-equivnorm") {
            finish(verify_equivnorm(f));
        } else if (id == "prop-poschar") {
            const unsigned k = std::max(1u, use_n);
            finish(verify_poschar(f, CharFunctor{CharFunctor::Tag::center, 0}));
            finish(verify_poschar(f, CharFunctor{CharFunctor::Tag::agemo_center, k}));
            finish(verify_poschar(f, CharFunctor{CharFunctor::Tag::omega_center, k}));
        } else if (id == "theorem-norm") {
            if (n) {
                finish(verify_theorem_norm(f, *n));
            } else {
                // Every admissible n up to the first one where agemo_n(Z(P)) is trivial.
                const Subgroup& z = ctx[ctx.center(f.base())];
                for (unsigned k = tight;; ++k) {
                    finish(verify_theorem_norm(f, k));
                    if (agemo(z, k).is_trivial())
                        break;
                }
            }
        } else if (id == "theorem-main") {
            finish(verify_theorem_main(f, use_n));
        } else if (id == "corollary-exponent") {
            finish(verify_corollary_exponent(f, use_n));
        } else if (id == "theorem-fact") {
            finish(verify_theorem_fact(f));
        } else if (id == "prop-frattini") {
            for (auto q : f.subgroups())
                if (is_normal(f, q))
                    finish(verify_frattini(f, q));
        } else if (id == "example-sharpness") {
            if (inst.built.wreath)
                finish(verify_example_sharpness(inst.built.wreath->p, inst.built.wreath->n, nullptr, caps));
            else
                finish(verify_example_sharpness(p, std::max(1u, use_n), &f, caps));
        } else if (id == "theorem-maingrp") {
            finish(verify_theorem_maingrp(f, use_n));
        } else {
            throw InputError("unknown verifier '" + id + "'");
        }
    } catch (...) {
        finish(error_report(id, "verifier aborted", std::current_exception()));
    }
    return out;
}

std::vector<CorpusEntry> corpus_from_json(const json& doc) {
    const json* list = &doc;
    if (doc.is_object())
        list = &field(doc, "instances", "corpus");
    if (!list->is_array())
        throw InputError("corpus must be an array of instances");
    std::vector<CorpusEntry> out;
    for (std::size_t i = 0; i < list->size(); ++i) {
        const json& e = (*list)[i];
        const std::string where = "corpus[" + std::to_string(i) + "]";
        CorpusEntry entry;
        if (e.contains("fusion")) {
            entry.fusion = e.at("fusion");
        } else {
            json body{{"group", field(e, "group", where)}, {"prime", field(e, "prime", where)}};
            if (e.contains("sylow_generators"))
                body["sylow_generators"] = e.at("sylow_generators");
            entry.fusion = json{{"group_realized", body}};
        }
        entry.id = e.contains("id") ? e.at("id").get<std::string>() : "instance " + std::to_string(i);
        if (e.contains("verifiers")) {
            for (const auto& v : e.at("verifiers")) {
                const auto name = v.get<std::string>();
                const auto& known = verifier_ids();
                if (std::find(known.begin(), known.end(), name) == known.end())
                    throw InputError(where + ": unknown verifier '" + name + "'");
                entry.verifiers.push_back(name);
            }
        } else {
            entry.verifiers = verifier_ids();
        }
        if (e.contains("n")) {
            if (!e.at("n").is_number_unsigned())
                throw InputError(where + ": n must be a non-negative integer");
            entry.n = e.at("n").get<unsigned>();
        }
        if (e.contains("caps"))
            entry.caps = caps_from_json(e.at("caps"));
        out.push_back(std::move(entry));
    }
    return out;
}

std::vector<CorpusEntry> default_corpus() {
    const std::vector<std::string> fusion_checks = {
        "saturation",   "alperin-regeneration", "prop-equivnorm", "prop-poschar",  "theorem-norm",
        "theorem-main", "corollary-exponent",   "theorem-fact",   "prop-frattini", "theorem-maingrp",
        "lemma-goldcent", "lemma-goldj",
    };
    auto group_entry = [&](std::string id, const GroupSpec& spec, unsigned p, std::vector<std::string> extra = {}) {
        CorpusEntry e;
        e.id = std::move(id);
        e.fusion = json{{"group_realized", {{"group", to_json(spec)}, {"prime", p}}}};
        e.verifiers = fusion_checks;
        e.verifiers.insert(e.verifiers.end(), extra.begin(), extra.end());
        return e;
    };
    auto cat = [](const char* name, std::vector<long long> params) { return GroupSpec::catalog(name, std::move(params)); };
    std::vector<CorpusEntry> out;
    out.push_back(group_entry("S4/2", cat("sym", {4}), 2));
    out.push_back(group_entry("A5/2", cat("alt", {5}), 2));
    out.push_back(group_entry("A6/2", cat("alt", {6}), 2));
    out.push_back(group_entry("S6/2", cat("sym", {6}), 2));
    out.push_back(group_entry("C4xS4/2", GroupSpec::product({cat("cyclic", {4}), cat("sym", {4})}), 2));
    out.push_back(group_entry("A9/3", cat("alt", {9}), 3, {"example-sharpness"}));
    for (auto [p, n] : {std::pair{2, 1}, {2, 2}, {3, 1}, {3, 2}}) {
        CorpusEntry e;
        e.id = "C" + std::to_string(ipow(p, n)) + "wrC" + std::to_string(p);
        const auto spec = cat("wreath_cyclic", {p, n});
        e.fusion = json{{"group_realized", {{"group", to_json(spec)}, {"prime", p}}}};
        e.verifiers = {"lemma-goldcent", "lemma-goldj", "example-sharpness", "theorem-norm", "saturation"};
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<VerificationReport> corpus_run(const std::vector<CorpusEntry>& entries) {
    std::vector<VerificationReport> out;
    for (const auto& entry : entries) {
        try {
            const FusionInstance inst = fusion_from_json(entry.fusion, entry.caps);
            for (const auto& v : entry.verifiers)
                for (auto& r : run_verifier(v, inst, entry.n, entry.caps)) {
                    r.instance = entry.id + ": " + r.instance;
                    out.push_back(std::move(r));
                }
        } catch (...) {
            out.push_back(error_report("instance", entry.id, std::current_exception()));
        }
    }
    return out;
}

CorpusSummary summarize(const std::vector<VerificationReport>& reports) {
    CorpusSummary s;
    for (const auto& r : reports)
        switch (r.outcome) {
        case Outcome::pass: ++s.pass; break;
        case Outcome::fail: ++s.fail; break;
        case Outcome::vacuous: ++s.vacuous; break;
        case Outcome::error: ++s.error; break;
        }
    return s;
}

json report_document(const std::vector<VerificationReport>& reports, bool timing) {
    json doc;
    doc["schema"] = "fusion-forge/1";
    doc["reports"] = json::array();
    for (const auto& r : reports)
        doc["reports"].push_back(to_json(r, timing));
    const auto s = summarize(reports);
    doc["summary"] = {{"pass", s.pass}, {"fail", s.fail}, {"vacuous", s.vacuous}, {"error", s.error}};
    return doc;
}

} // namespace ff
