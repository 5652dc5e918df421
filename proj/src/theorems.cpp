#include "ff/theorems.hpp"

#include "ff/error.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

namespace ff {

const char* outcome_name(Outcome o) noexcept {
    switch (o) {
    case Outcome::pass: return "pass";
    case Outcome::fail: return "fail";
    case Outcome::vacuous: return "vacuous";
    case Outcome::error: return "error";
    }
    return "error";
}

bool VerificationReport::hypotheses_hold() const {
    return std::all_of(hypotheses.begin(), hypotheses.end(), [](const Hypothesis& h) { return h.holds; });
}

void VerificationReport::settle() {
    if (error)
        outcome = Outcome::error;
    else if (!hypotheses_hold())
        outcome = Outcome::vacuous;
    else if (std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.holds; }))
        outcome = Outcome::pass;
    else
        outcome = Outcome::fail;
}

nlohmann::json to_json(const VerificationReport& r, bool timing) {
    nlohmann::json j;
    j["result_id"] = r.result_id;
    j["instance"] = r.instance;
    j["conclusion"] = r.conclusion;
    j["outcome"] = outcome_name(r.outcome);
    j["hypotheses"] = nlohmann::json::array();
    for (const auto& h : r.hypotheses)
        j["hypotheses"].push_back({{"name", h.name}, {"holds", h.holds}, {"witness", h.witness}});
    j["checks"] = nlohmann::json::array();
    for (const auto& c : r.checks)
        j["checks"].push_back({{"name", c.name}, {"holds", c.holds}, {"detail", c.detail}});
    if (r.counterexample)
        j["counterexample"] = *r.counterexample;
    if (r.error) {
        j["error"] = *r.error;
        j["error_kind"] = r.error_kind;
    }
    if (timing)
        j["elapsed_ms"] = r.elapsed_ms;
    return j;
}

std::string to_text(const VerificationReport& r, bool timing) {
    std::ostringstream out;
    out << "[" << outcome_name(r.outcome) << "] " << r.result_id << " on " << r.instance;
    if (timing)
        out << " (" << r.elapsed_ms << " ms)";
    out << "\n  conclusion: " << r.conclusion << "\n";
    for (const auto& h : r.hypotheses)
        out << "  hypothesis " << (h.holds ? "holds" : "FAILS") << ": " << h.name
            << (h.witness.empty() ? "" : " [" + h.witness + "]") << "\n";
    for (const auto& c : r.checks)
        out << "  check " << (c.holds ? "ok" : "FAILED") << ": " << c.name
            << (c.detail.empty() ? "" : " [" + c.detail + "]") << "\n";
    if (r.counterexample)
        out << "  counterexample: " << *r.counterexample << "\n";
    if (r.error)
        out << "  error (" << r.error_kind << "): " << *r.error << "\n";
    return out.str();
}

Subgroup CharFunctor::apply(const Subgroup& q) const {
    switch (tag) {
    case Tag::center: return center(q);
    case Tag::agemo_center: return agemo(center(q), n);
    case Tag::omega_center: return omega(center(q), n);
    }
    return center(q);
}

std::string CharFunctor::label() const {
    switch (tag) {
    case Tag::center: return "Z";
    case Tag::agemo_center: return "agemo_" + std::to_string(n) + "(Z)";
    case Tag::omega_center: return "omega_" + std::to_string(n) + "(Z)";
    }
    return "Z";
}

unsigned tightest_n(unsigned nilpotence_class, unsigned p) {
    if (nilpotence_class <= 1)
        return 0;
    return (nilpotence_class - 1 + (p - 2)) / (p - 1);
}

long long exponent_sum_identity(unsigned p) {
    long long sum = -static_cast<long long>(p) + 1;
    long long binom = 1;
    for (unsigned k = 0; k + 2 <= p; ++k) {
        sum += (k % 2 == 0 ? binom : -binom);
        binom = binom * (p - 1 - k) / (k + 1);
    }
    return sum;
}

namespace {

using Clock = std::chrono::steady_clock;

struct Scope {
    VerificationReport report;
    Clock::time_point start = Clock::now();

    Scope(std::string id, std::string instance, std::string conclusion) {
        report.result_id = std::move(id);
        report.instance = std::move(instance);
        report.conclusion = std::move(conclusion);
    }
    void hypothesis(std::string name, bool holds, std::string witness = {}) {
        report.hypotheses.push_back({std::move(name), holds, std::move(witness)});
    }
    void check(std::string name, bool holds, std::string detail = {}) {
        report.checks.push_back({std::move(name), holds, std::move(detail)});
    }
    bool ready() const { return report.hypotheses_hold(); }
    VerificationReport done() {
        report.settle();
        report.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
        return std::move(report);
    }
};

std::string str(unsigned long long v) { return std::to_string(v); }

std::string instance_of(const FusionSystem& f) {
    return "fusion system on P of order " + str(f.underlying().order()) + ", p=" + str(f.prime());
}

std::string instance_of(const Subgroup& p) { return "p-group of order " + str(p.order()); }

std::string class_bound_text(unsigned cls, unsigned n, unsigned p) {
    return "class " + str(cls) + ", bound n(p-1)+1 = " + str(n * (p - 1) + 1);
}

void saturation_hypothesis(Scope& s, const FusionSystem& f) {
    const auto& sat = f.saturation();
    s.hypothesis("F is saturated", sat.saturated(),
                 sat.saturated() ? "" : (sat.sylow_axiom ? "extension axiom fails" : "Sylow axiom fails"));
}

void class_hypothesis(Scope& s, const Subgroup& p, unsigned prime, unsigned n) {
    const unsigned cls = nilpotence_class(p);
    s.hypothesis("class(P) <= n(p-1)+1", cls <= n * (prime - 1) + 1, class_bound_text(cls, n, prime));
}

std::string subgroup_text(const PGroupContext& ctx, SubgroupId id) { return ctx.describe(id); }

} // namespace

VerificationReport verify_goldcent(const Subgroup& p, unsigned n) {
    Scope s("lemma-goldcent", instance_of(p) + ", n=" + str(n),
            "no proper Q < P has C_P(agemo_n(Z(Q))) = Q");
    const unsigned prime = prime_of(p);
    if (prime == 0)
        throw InputError("the lemma needs a nontrivial p-group");
    class_hypothesis(s, p, prime, n);
    if (!s.ready())
        return s.done();
    SubgroupLattice lattice(p);
    std::size_t scanned = 0;
    std::optional<SubgroupId> bad;
    for (SubgroupId id = 0; id + 1 < lattice.size(); ++id) {
        const Subgroup& q = lattice[id];
        ++scanned;
        if (centralizer(p, agemo(center(q), n)) == q) {
            bad = id;
            break;
        }
    }
    s.check("C_P(agemo_n(Z(Q))) != Q for every proper Q", !bad, str(scanned) + " proper subgroups scanned");
    if (bad)
        s.report.counterexample = lattice[*bad].describe();
    return s.done();
}

VerificationReport verify_goldj(const Subgroup& p) {
    Scope s("lemma-goldj", instance_of(p), "J(P) <= Q for every normal Q with C_P(agemo_1(Z(Q))) = Q");
    if (prime_of(p) == 0)
        throw InputError("the lemma needs a nontrivial p-group");
    SubgroupLattice lattice(p);
    const Subgroup j = thompson_subgroup(lattice);
    std::size_t normal = 0, qualifying = 0;
    std::optional<SubgroupId> bad;
    for (SubgroupId id = 0; id < lattice.size() && !bad; ++id) {
        const Subgroup& q = lattice[id];
        if (!is_normal_in(q, p))
            continue;
        ++normal;
        if (!(centralizer(p, agemo(center(q), 1)) == q))
            continue;
        ++qualifying;
        if (!j.is_subgroup_of(q))
            bad = id;
    }
    s.check("J(P) <= Q for every qualifying Q", !bad,
            str(normal) + " normal subgroups, " + str(qualifying) + " satisfy the centralizer condition, |J(P)| = " +
                str(j.order()));
    if (bad)
        s.report.counterexample = lattice[*bad].describe();
    return s.done();
}

VerificationReport verify_equivnorm(const FusionSystem& f, std::optional<SubgroupId> w) {
    const auto& ctx = f.context();
    Scope s("prop-equivnorm",
            instance_of(f) + (w ? ", W = " + subgroup_text(ctx, *w) : std::string(", every W <= P")),
            "(a) W normal in F, (b) W strongly closed and inside every centric radical subgroup, "
            "(c) W weakly closed and inside every member of the Alperin conjugation family are equivalent");
    saturation_hypothesis(s, f);
    if (!s.ready())
        return s.done();

    // (b): every centric radical subgroup, tested one by one.
    std::vector<SubgroupId> centric_radical;
    for (auto q : f.subgroups())
        if (is_centric(f, q) && is_radical(f, q))
            centric_radical.push_back(q);
    // (c): the F-classes of the Alperin representatives.
    std::vector<SubgroupId> family;
    for (auto q : alperin_family(f))
        for (auto x : f_class(f, q))
            family.push_back(x);
    std::sort(family.begin(), family.end());

    auto inside_all = [&](SubgroupId x, const std::vector<SubgroupId>& list) {
        return std::all_of(list.begin(), list.end(), [&](SubgroupId q) { return ctx.contains(q, x); });
    };

    std::vector<SubgroupId> targets = w ? std::vector<SubgroupId>{*w} : f.subgroups();
    std::size_t normal = 0;
    std::optional<std::string> disagreement;
    bool last_a = false, last_b = false, last_c = false;
    for (auto x : targets) {
        const bool a = is_normal(f, x);
        const bool b = is_strongly_closed(f, x) && inside_all(x, centric_radical);
        const bool c = is_weakly_closed(f, x) && inside_all(x, family);
        normal += a;
        last_a = a, last_b = b, last_c = c;
        if ((a != b || a != c) && !disagreement)
            disagreement = subgroup_text(ctx, x) + ": a=" + (a ? "true" : "false") + " b=" + (b ? "true" : "false") +
                           " c=" + (c ? "true" : "false");
    }
    std::string detail = w ? std::string("a=") + (last_a ? "true" : "false") + " b=" + (last_b ? "true" : "false") +
                                 " c=" + (last_c ? "true" : "false")
                           : str(targets.size()) + " subgroups, " + str(normal) + " normal, " +
                                 str(centric_radical.size()) + " centric radical";
    s.check("(a), (b) and (c) agree", !disagreement, detail);
    if (disagreement)
        s.report.counterexample = *disagreement;
    return s.done();
}

VerificationReport verify_poschar(const FusionSystem& f, const CharFunctor& w) {
    const auto& ctx = f.context();
    const SubgroupId top = f.base();
    Scope s("prop-poschar", instance_of(f) + ", W = " + w.label(),
            "some proper F-centric Q has C_P(W(Q)) = Q, or W(P) is normal in F");
    saturation_hypothesis(s, f);
    const Subgroup& p = ctx[top];
    auto wid = [&](SubgroupId q) { return ctx.id_of(w.apply(ctx[q])); };
    const SubgroupId wp = wid(top);
    std::optional<SubgroupId> monotone_bad;
    for (auto q : f.subgroups())
        if (ctx.contains(q, ctx.centralizer(q)) && !ctx.contains(wid(q), wp)) {
            monotone_bad = q;
            break;
        }
    s.hypothesis("W(P) <= W(Q) for all Q <= P with C_P(Q) <= Q", !monotone_bad,
                 monotone_bad ? subgroup_text(ctx, *monotone_bad) : "");
    if (!s.ready())
        return s.done();

    // W is a subfunctor of the center, carried along by every computed isomorphism.
    bool sub_center = true, natural = true;
    std::size_t isos = 0;
    for (auto q : f.subgroups()) {
        const SubgroupId wq = wid(q);
        sub_center = sub_center && ctx.contains(ctx.center(q), wq);
        for (const auto& m : f.homs(q)) {
            ++isos;
            const Morphism r = restrict(ctx, m, wq);
            natural = natural && r.image == wid(m.image);
        }
    }
    s.check("W(Q) <= Z(Q) for every Q", sub_center);
    s.check("alpha(W(Q)) = W(alpha(Q)) for every computed morphism", natural, str(isos) + " morphisms");

    std::optional<SubgroupId> proper;
    for (auto q : f.subgroups())
        if (q != top && is_centric(f, q) && centralizer(p, ctx[wid(q)]) == ctx[q]) {
            proper = q;
            break;
        }
    const bool normal = is_normal(f, wp);
    s.check("disjunction holds", proper.has_value() || normal,
            std::string("proper centric Q with C_P(W(Q)) = Q: ") +
                (proper ? subgroup_text(ctx, *proper) : std::string("none")) +
                "; W(P) of order " + str(ctx[wp].order()) + (normal ? " is" : " is not") + " normal");
    return s.done();
}

VerificationReport verify_theorem_norm(const FusionSystem& f, unsigned n) {
    const auto& ctx = f.context();
    Scope s("theorem-norm", instance_of(f) + ", n=" + str(n), "agemo_n(Z(P)) is normal in F");
    saturation_hypothesis(s, f);
    class_hypothesis(s, f.underlying(), f.prime(), n);
    if (!s.ready())
        return s.done();
    const SubgroupId a = ctx.id_of(agemo(ctx[ctx.center(f.base())], n));
    s.check("agemo_n(Z(P)) is normal in F", is_normal(f, a), "|agemo_n(Z(P))| = " + str(ctx[a].order()));
    return s.done();
}

namespace {

void main_hypotheses(Scope& s, const FusionSystem& f, unsigned n) {
    const auto& ctx = f.context();
    saturation_hypothesis(s, f);
    class_hypothesis(s, f.underlying(), f.prime(), n);
    const SubgroupId op = op_subgroup(f);
    s.hypothesis("O_p(F) = 1", op == 0, "|O_p(F)| = " + str(ctx[op].order()));
}

} // namespace

VerificationReport verify_theorem_main(const FusionSystem& f, unsigned n) {
    const auto& ctx = f.context();
    Scope s("theorem-main", instance_of(f) + ", n=" + str(n), "Z(P) has exponent at most p^n");
    main_hypotheses(s, f, n);
    if (!s.ready())
        return s.done();
    const auto e = exponent(ctx[ctx.center(f.base())]);
    const auto bound = ipow(f.prime(), n);
    s.check("exp(Z(P)) <= p^n", e <= bound, "exp(Z(P)) = " + str(e) + ", p^n = " + str(bound));
    return s.done();
}

VerificationReport verify_corollary_exponent(const FusionSystem& f, unsigned n) {
    const unsigned p = f.prime();
    Scope s("corollary-exponent", instance_of(f) + ", n=" + str(n), "P has exponent at most p^(n^2(p-1)+n)");
    s.hypothesis("P is nontrivial", !f.underlying().is_trivial());
    main_hypotheses(s, f, n);
    if (!s.ready())
        return s.done();
    const Subgroup& sp = f.underlying();
    const Group& g = sp.parent();
    const auto upper = central_series(sp).upper;
    const auto pn = ipow(p, n);
    bool quotients = true;
    for (std::size_t k = 0; k + 1 < upper.size(); ++k)
        for (auto x : upper[k + 1].elements())
            if (!upper[k].contains(g.pow(x, pn)))
                quotients = false;
    s.check("every upper central factor has exponent at most p^n", quotients,
            str(upper.size() - 1) + " factors");
    const auto e = exponent(sp);
    const unsigned power = n * n * (p - 1) + n;
    const bool fits = power >= 63 || e <= ipow(p, power);
    s.check("exp(P) <= p^(n^2(p-1)+n)", fits, "exp(P) = " + str(e) + ", bound p^" + str(power));
    return s.done();
}

VerificationReport verify_theorem_fact(const FusionSystem& f) {
    const auto& ctx = f.context();
    Scope s("theorem-fact", instance_of(f), "F = <C_F(agemo_1(Z(P))), N_F(J(P))>");
    saturation_hypothesis(s, f);
    if (!s.ready())
        return s.done();
    const SubgroupId top = f.base();
    const SubgroupId x = ctx.id_of(agemo(ctx[ctx.center(top)], 1));
    const SubgroupId j = ctx.id_of(thompson_subgroup(ctx.lattice()));
    const FusionSystem c = centralizer_system(f, x);
    const FusionSystem nj = normalizer_system(f, j);
    const FusionSystem parts[] = {c, nj};
    const FusionSystem generated = generate(f.context_ptr(), top, parts);
    s.check("F equals the generated system", equals(f, generated),
            "|agemo_1(Z(P))| = " + str(ctx[x].order()) + ", |J(P)| = " + str(ctx[j].order()));

    const SubgroupId zf = center_of_fusion(f);
    s.check("both computations of Z(F) agree", zf == center_by_fixed_points(f), "|Z(F)| = " + str(ctx[zf].order()));
    const SubgroupId lhs = ctx.meet(x, center_of_fusion(nj));
    s.check("agemo_1(Z(P)) meet Z(N_F(J(P))) <= Z(F)", ctx.contains(zf, lhs),
            "left side of order " + str(ctx[lhs].order()));
    return s.done();
}

VerificationReport verify_frattini(const FusionSystem& f, SubgroupId q) {
    const auto& ctx = f.context();
    Scope s("prop-frattini", instance_of(f) + ", Q = " + subgroup_text(ctx, q), "F = <PC_F(Q), N_F(QC_P(Q))>");
    s.hypothesis("Q is normal in F", is_normal(f, q));
    if (!s.ready())
        return s.done();
    const SubgroupId qc = ctx.join(q, ctx.centralizer_in(f.base(), q));
    const FusionSystem parts[] = {np_cf(f, q), normalizer_system(f, qc)};
    const FusionSystem generated = generate(f.context_ptr(), f.base(), parts);
    s.check("F equals the generated system", equals(f, generated), "|QC_P(Q)| = " + str(ctx[qc].order()));
    return s.done();
}

namespace {

/// Irreducibility of Aut_F(Q) on the section top/bottom: no invariant subgroup strictly between.
bool acts_irreducibly(const FusionSystem& f, SubgroupId q, SubgroupId bottom, SubgroupId top) {
    const auto& ctx = f.context();
    const auto autos = automorphisms(f, q);
    for (auto r : ctx.subgroups_of(top)) {
        if (r == top || r == bottom || !ctx.contains(r, bottom))
            continue;
        bool invariant = true;
        for (const auto& m : autos)
            if (restrict(ctx, m, r).image != r) {
                invariant = false;
                break;
            }
        if (invariant)
            return false;
    }
    return true;
}

} // namespace

VerificationReport verify_example_sharpness(unsigned p, unsigned n, const FusionSystem* realization, const Caps& caps) {
    Scope s("example-sharpness", "C_" + str(ipow(p, n)) + " wr C_" + str(p) + (realization ? " with a realization" : ""),
            "P has class n(p-1)+1 and Z(P) has exponent p^n, so the exponent bound is attained");
    const BuiltGroup built = build(GroupSpec::catalog("wreath_cyclic", {static_cast<long long>(p), static_cast<long long>(n)}), caps);
    const Group& g = *built.group;
    const Subgroup whole = Subgroup::whole(built.group);
    const WreathStructure w = wreath_structure(built);
    const Subgroup& derived = w.derived;
    const auto pn = ipow(p, n);

    const unsigned cls = nilpotence_class(whole);
    s.check("(i) class(P) = n(p-1)+1", cls == n * (p - 1) + 1, "class " + str(cls));
    const auto ez = exponent(center(whole));
    s.check("(ii) exp(Z(P)) = p^n", ez == pn, "exp(Z(P)) = " + str(ez));

    const Subgroup lhs = iterated_commutator(derived, w.x, p - 1);
    const Subgroup rhs = omega(derived, n - 1);
    s.check("(iii) [P', x; p-1] = Omega_{n-1}(P')", lhs == rhs, "order " + str(lhs.order()) + " vs " + str(rhs.order()));

    const auto& a = w.derived_generators;
    bool homocyclic = is_abelian(derived) && derived.order() == ipow(pn, p - 1) && a.size() == p - 1 &&
                      closure(built.group, a) == derived;
    for (auto ai : a)
        homocyclic = homocyclic && g.element_order(ai) == pn;
    bool action = true;
    ElemId prod = g.identity();
    for (std::size_t i = 0; i < a.size(); ++i) {
        prod = g.mul(prod, a[i]);
        if (i + 1 < a.size())
            action = action && g.conj(a[i], w.x) == a[i + 1];
    }
    action = action && g.conj(a.back(), w.x) == g.inv(prod);
    s.check("(iv) P' is a direct product of p-1 copies of C_{p^n}", homocyclic,
            "|P'| = " + str(derived.order()));
    s.check("(iv) x sends a_i to a_{i+1} and a_{p-1} to (a_1...a_{p-1})^-1", action);

    // The exponent-sum argument needs p odd: it uses (-1)^(p-1) = 1.
    if (p % 2 == 1) {
        const long long sum = exponent_sum_identity(p);
        // [a_1, x; p-1] = prod a_{k+1}^((-1)^k C(p-1,k) - 1), exponents read modulo p^n.
        ElemId c = a.front();
        for (unsigned k = 0; k + 1 < p; ++k)
            c = g.commutator(c, w.x);
        ElemId formula = g.identity();
        long long binom = 1;
        for (unsigned k = 0; k + 2 <= p; ++k) {
            const long long e = (k % 2 == 0 ? binom : -binom) - 1;
            const long long m = static_cast<long long>(pn);
            formula = g.mul(formula, g.pow(a[k], static_cast<unsigned long long>(((e % m) + m) % m)));
            binom = binom * (p - 1 - k) / (k + 1);
        }
        s.check("(v) exponent sum of [a_1, x; p-1] is -p", sum == -static_cast<long long>(p) && c == formula,
                "identity gives " + std::to_string(sum) + ", product formula " + (c == formula ? "matches" : "differs"));
    }

    if (realization) {
        const auto& ctx = realization->context();
        const Subgroup& rp = realization->underlying();
        s.hypothesis("realization is saturated", realization->saturation().saturated());
        s.hypothesis("realization lives on a group of the same order and class",
                     rp.order() == whole.order() && nilpotence_class(rp) == cls,
                     "order " + str(rp.order()) + ", class " + str(nilpotence_class(rp)));
        if (s.ready()) {
            const SubgroupId op = op_subgroup(*realization);
            s.check("(vi) O_p(F) = 1", op == 0, "|O_p(F)| = " + str(ctx[op].order()));
            const SubgroupId q = ctx.id_of(thompson_subgroup(ctx.lattice()));
            const bool abelian_q = is_abelian(ctx[q]);
            const SubgroupId om1 = ctx.id_of(omega(ctx[q], 1));
            const SubgroupId omn = ctx.id_of(omega(ctx[q], n - 1));
            s.check("Aut_F(Q) acts irreducibly on Omega_1(Q) for the maximal abelian Q",
                    abelian_q && acts_irreducibly(*realization, q, 0, om1), "|Q| = " + str(ctx[q].order()));
            s.check("Aut_F(Q) acts irreducibly on Q/Omega_{n-1}(Q)", acts_irreducibly(*realization, q, omn, q));
        }
    }
    return s.done();
}

VerificationReport verify_theorem_maingrp(const FusionSystem& f, unsigned n) {
    const auto& ctx = f.context();
    Scope s("theorem-maingrp", instance_of(f) + ", n=" + str(n), "Z(P) has exponent at most p^n");
    s.hypothesis("F is realized by a group", f.group_realized());
    s.hypothesis("P is nonabelian", !is_abelian(f.underlying()));
    class_hypothesis(s, f.underlying(), f.prime(), n);
    std::optional<SubgroupId> closed;
    std::size_t abelian = 0;
    for (auto w : f.subgroups()) {
        if (w == 0 || !is_abelian(ctx[w]))
            continue;
        ++abelian;
        if (is_strongly_closed(f, w)) {
            closed = w;
            break;
        }
    }
    s.hypothesis("no nontrivial strongly closed abelian subgroup", !closed,
                 closed ? subgroup_text(ctx, *closed) : str(abelian) + " abelian subgroups scanned");
    if (!s.ready())
        return s.done();
    const auto e = exponent(ctx[ctx.center(f.base())]);
    s.check("exp(Z(P)) <= p^n", e <= ipow(f.prime(), n), "exp(Z(P)) = " + str(e));
    return s.done();
}

VerificationReport verify_saturation(const FusionSystem& f) {
    const auto& ctx = f.context();
    Scope s("saturation", instance_of(f), "F satisfies the Sylow and extension axioms");
    const auto& rep = f.saturation();
    s.check("Sylow axiom", rep.sylow_axiom,
            "|Aut_F(P)| = " + str(rep.aut_f_order) + ", |Aut_P(P)| = " + str(rep.aut_p_order));
    s.check("extension axiom", rep.extension_axiom,
            str(rep.subgroups_checked) + " sources, " + str(rep.isomorphisms_checked) + " isomorphisms");
    if (ctx.size() <= 128) {
        const auto full = check_saturation(f, false);
        s.check("reduced and unreduced scans agree", full.saturated() == rep.saturated(),
                str(full.isomorphisms_checked) + " isomorphisms unreduced");
    }
    if (rep.extension_witness) {
        const auto& wf = *rep.extension_witness;
        s.report.counterexample = "isomorphism " + subgroup_text(ctx, wf.phi.source) + " -> " +
                                  subgroup_text(ctx, wf.target) + " does not extend to N_phi = " +
                                  subgroup_text(ctx, wf.n_phi);
    }
    return s.done();
}

VerificationReport verify_alperin_regeneration(const FusionSystem& f) {
    Scope s("alperin-regeneration", instance_of(f), "F is generated by Aut_F(Q) for Q in the Alperin family");
    saturation_hypothesis(s, f);
    if (!s.ready())
        return s.done();
    const auto family = alperin_family(f);
    std::vector<Morphism> maps;
    for (auto q : family)
        for (const auto& m : automorphisms(f, q))
            maps.push_back(m);
    const FusionSystem g = generate(f.context_ptr(), f.base(), {}, maps);
    const bool eq = equals(f, g);
    s.check("generated system equals F", eq, str(family.size()) + " classes in the family");
    if (f.context().group()->order() <= 128)
        s.check("screened and full comparisons agree", eq == same_hom_sets(f, g));
    return s.done();
}

} // namespace ff
