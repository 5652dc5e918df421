#include "ff/catalog.hpp"
#include "ff/error.hpp"
#include "ff/fusion.hpp"
#include "ff/theorems.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using nlohmann::json;

namespace {

struct Options {
    std::string format = "json";
    std::string out;
    bool timing = false;
    std::optional<unsigned> prime;
    std::optional<unsigned> n;
    std::optional<std::size_t> cap_order;
    std::optional<std::size_t> cap_lattice;
};

ff::Caps caps_of(const Options& o, ff::Caps base = {}) {
    if (o.cap_order)
        base.max_order = *o.cap_order;
    if (o.cap_lattice)
        base.max_lattice_order = *o.cap_lattice;
    return base;
}

void emit(const Options& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(o.out);
    if (!file)
        throw ff::InputError("cannot write '" + o.out + "'");
    file << text;
}

std::string render(const Options& o, const json& doc, const std::string& text) {
    return o.format == "json" ? doc.dump(2) + "\n" : text;
}

int exit_code(const std::vector<ff::VerificationReport>& reports) {
    int code = 0;
    for (const auto& r : reports) {
        if (r.outcome == ff::Outcome::fail)
            return 1;
        if (r.outcome == ff::Outcome::error)
            code = std::max(code, r.error_kind == "cap" ? 3 : 2);
    }
    return code;
}

int group_info(const Options& o, const std::string& path) {
    const auto built = ff::build(ff::group_spec_from_json(ff::read_document(path)), caps_of(o));
    const auto whole = ff::Subgroup::whole(built.group);
    ff::Subgroup p = whole;
    if (!ff::prime_power(whole.order()) || (o.prime && ff::prime_of(whole, 0) != *o.prime)) {
        if (!o.prime)
            throw ff::InputError("group of order " + std::to_string(whole.order()) +
                                 " is not a p-group; pass --prime to use a Sylow subgroup");
        p = ff::sylow(whole, *o.prime);
    }
    const unsigned prime = ff::prime_of(p, o.prime.value_or(0));
    const unsigned n = o.n.value_or(1);
    json info;
    info["schema"] = "fusion-forge/1";
    info["group"] = built.spec.label();
    info["order"] = whole.order();
    json pj;
    pj["order"] = p.order();
    pj["prime"] = prime;
    if (!p.is_trivial()) {
        const auto z = ff::center(p);
        const auto cls = ff::nilpotence_class(p);
        pj["class"] = cls;
        pj["tightest_n"] = ff::tightest_n(cls, prime);
        pj["exponent"] = ff::exponent(p);
        pj["center_order"] = z.order();
        pj["center_exponent"] = ff::exponent(z);
        pj["thompson_order"] = ff::thompson_subgroup(p).order();
        pj["n"] = n;
        pj["agemo_center_order"] = ff::agemo(z, n).order();
        pj["omega_center_order"] = ff::omega(z, n).order();
    }
    info["p_group"] = pj;

    std::ostringstream text;
    text << "group " << built.spec.label() << " of order " << whole.order() << "\n";
    text << "p-group of order " << p.order() << " (p=" << prime << ")\n";
    for (const char* key : {"class", "tightest_n", "exponent", "center_order", "center_exponent", "thompson_order",
                            "n", "agemo_center_order", "omega_center_order"})
        if (pj.contains(key))
            text << "  " << key << ": " << pj[key].dump() << "\n";
    emit(o, render(o, info, text.str()));
    return 0;
}

int fusion_build(const Options& o, const std::string& path) {
    const auto inst = ff::fusion_from_json(ff::read_document(path), caps_of(o));
    const auto& f = inst.fusion;
    const auto& ctx = f.context();
    std::size_t morphisms = 0, classes = 0;
    std::vector<char> seen(ctx.size(), 0);
    for (auto q : f.subgroups()) {
        morphisms += f.homs(q).size();
        if (!seen[q]) {
            ++classes;
            for (auto x : ff::f_class(f, q))
                seen[x] = 1;
        }
    }
    json doc{{"schema", "fusion-forge/1"},
             {"instance", inst.label},
             {"p_group_order", f.underlying().order()},
             {"prime", f.prime()},
             {"subgroups", f.subgroups().size()},
             {"f_classes", classes},
             {"morphisms", morphisms}};
    std::ostringstream text;
    text << inst.label << "\n  |P| = " << f.underlying().order() << ", " << f.subgroups().size() << " subgroups, "
         << classes << " F-classes, " << morphisms << " morphisms\n";
    emit(o, render(o, doc, text.str()));
    return 0;
}

int fusion_check(const Options& o, const std::string& path) {
    const auto inst = ff::fusion_from_json(ff::read_document(path), caps_of(o));
    const auto& f = inst.fusion;
    const auto& ctx = f.context();
    const auto& sat = f.saturation();
    json doc{{"schema", "fusion-forge/1"}, {"instance", inst.label}};
    doc["saturation"] = {{"sylow_axiom", sat.sylow_axiom},
                         {"extension_axiom", sat.extension_axiom},
                         {"aut_f_order", sat.aut_f_order},
                         {"aut_p_order", sat.aut_p_order},
                         {"isomorphisms_checked", sat.isomorphisms_checked},
                         {"saturated", sat.saturated()}};
    std::ostringstream text;
    text << inst.label << "\n  saturated: " << (sat.saturated() ? "yes" : "no") << " (Sylow axiom "
         << (sat.sylow_axiom ? "holds" : "fails") << ", extension axiom " << (sat.extension_axiom ? "holds" : "fails")
         << ")\n";
    if (sat.extension_witness) {
        const auto& w = *sat.extension_witness;
        doc["saturation"]["witness"] = {{"source", ctx.describe(w.phi.source)},
                                        {"target", ctx.describe(w.target)},
                                        {"n_phi", ctx.describe(w.n_phi)}};
        text << "  witness: " << ctx.describe(w.phi.source) << " -> " << ctx.describe(w.target)
             << " does not extend to " << ctx.describe(w.n_phi) << "\n";
    }
    const auto op = ff::op_subgroup(f);
    const auto zf = ff::center_of_fusion(f);
    doc["op"] = ctx.describe(op);
    doc["center"] = ctx.describe(zf);
    doc["alperin_family"] = json::array();
    text << "  O_p(F): " << ctx.describe(op) << "\n  Z(F): " << ctx.describe(zf) << "\n  Alperin family:\n";
    for (auto q : ff::alperin_family(f)) {
        const auto out = ff::out_profile(f, q).first;
        doc["alperin_family"].push_back({{"subgroup", ctx.describe(q)}, {"out_order", out}});
        text << "    " << ctx.describe(q) << ", |Out_F(Q)| = " << out << "\n";
    }
    emit(o, render(o, doc, text.str()));
    return sat.saturated() ? 0 : 1;
}

int emit_reports(const Options& o, const std::vector<ff::VerificationReport>& reports) {
    std::ostringstream text;
    for (const auto& r : reports)
        text << ff::to_text(r, o.timing);
    const auto s = ff::summarize(reports);
    text << "summary: " << s.pass << " pass, " << s.fail << " fail, " << s.vacuous << " vacuous, " << s.error
         << " error\n";
    emit(o, render(o, ff::report_document(reports, o.timing), text.str()));
    return exit_code(reports);
}

int verify(const Options& o, const std::string& id, const std::string& path) {
    const auto& ids = ff::verifier_ids();
    if (std::find(ids.begin(), ids.end(), id) == ids.end())
        throw ff::InputError("unknown verifier '" + id + "'");
    const auto caps = caps_of(o);
    const auto inst = ff::fusion_from_json(ff::read_document(path), caps);
    return emit_reports(o, ff::run_verifier(id, inst, o.n, caps));
}

int corpus(const Options& o, const std::string& path) {
    auto entries = path.empty() ? ff::default_corpus() : ff::corpus_from_json(ff::read_document(path));
    for (auto& e : entries) {
        e.caps = caps_of(o, e.caps);
        if (o.n)
            e.n = o.n;
    }
    return emit_reports(o, ff::corpus_run(entries));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fusion-forge: finite p-groups, fusion systems and exponent bounds"};
    app.require_subcommand(1);
    Options o;
    auto common = [&](CLI::App* sub) {
        sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
        sub->add_option("--out", o.out, "Write the report to this file");
        sub->add_option("--cap-order", o.cap_order, "Largest group order to enumerate");
        sub->add_option("--cap-lattice", o.cap_lattice, "Largest p-group order whose lattice may be built");
        sub->add_option("--prime", o.prime, "Prime p");
        sub->add_option("--n", o.n, "Exponent parameter n");
        sub->add_flag("--timing", o.timing, "Include elapsed times in reports");
    };
    std::string path, id;
    auto* info = app.add_subcommand("group-info", "Structure of a group or of its Sylow p-subgroup");
    info->add_option("spec", path, "GroupSpec JSON file")->required();
    common(info);
    auto* fb = app.add_subcommand("fusion-build", "Build a fusion system and summarize it");
    fb->add_option("spec", path, "Fusion spec JSON file")->required();
    common(fb);
    auto* fc = app.add_subcommand("fusion-check", "Saturation, O_p(F), Z(F) and the Alperin family");
    fc->add_option("spec", path, "Fusion spec JSON file")->required();
    common(fc);
    auto* ver = app.add_subcommand("verify", "Run one verifier on a fusion system");
    ver->add_option("id", id, "Verifier id")->required();
    ver->add_option("spec", path, "Fusion spec JSON file")->required();
    common(ver);
    auto* cor = app.add_subcommand("corpus", "Run a corpus of verifications (default corpus without a file)");
    cor->add_option("config", path, "Corpus config JSON file");
    common(cor);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    try {
        if (info->parsed())
            return group_info(o, path);
        if (fb->parsed())
            return fusion_build(o, path);
        if (fc->parsed())
            return fusion_check(o, path);
        if (ver->parsed())
            return verify(o, id, path);
        return corpus(o, path);
    } catch (const ff::CapExceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return 3;
    } catch (const ff::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
