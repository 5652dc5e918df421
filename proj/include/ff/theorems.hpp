#pragma once

#include "ff/catalog.hpp"
#include "ff/fusion.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace ff {

enum class Outcome { pass, fail, vacuous, error };

const char* outcome_name(Outcome o) noexcept;

struct Hypothesis {
    std::string name;
    bool holds = false;
    std::string witness;
};

struct Check {
    std::string name;
    bool holds = false;
    std::string detail;
};

/// Result of one verifier on one instance. Checks are only evaluated when every
/// hypothesis holds; otherwise the outcome is vacuous.
struct VerificationReport {
    std::string result_id;
    std::string instance;
    std::vector<Hypothesis> hypotheses;
    std::vector<Check> checks;
    std::string conclusion;
    Outcome outcome = Outcome::error;
    std::optional<std::string> counterexample;
    std::optional<std::string> error;
    /// "input", "cap", "precondition" or "internal" when `error` is set.
    std::string error_kind;
    double elapsed_ms = 0;

    bool hypotheses_hold() const;
    /// Sets the outcome from hypotheses and checks.
    void settle();
};

nlohmann::json to_json(const VerificationReport& r, bool timing = false);
std::string to_text(const VerificationReport& r, bool timing = false);

/// A characteristic subfunctor of the center functor.
struct CharFunctor {
    enum class Tag { center, agemo_center, omega_center };
    Tag tag = Tag::center;
    unsigned n = 0;

    Subgroup apply(const Subgroup& q) const;
    std::string label() const;
};

/// Smallest n >= 0 with class(P) <= n(p-1) + 1.
unsigned tightest_n(unsigned nilpotence_class, unsigned p);
/// -p + 1 + sum_{k=0}^{p-2} (-1)^k C(p-1, k), in exact arithmetic.
long long exponent_sum_identity(unsigned p);

VerificationReport verify_goldcent(const Subgroup& p, unsigned n);
VerificationReport verify_goldj(const Subgroup& p);
/// Conditions (a), (b), (c) for one W, or for every W <= P when `w` is empty.
VerificationReport verify_equivnorm(const FusionSystem& f, std::optional<SubgroupId> w = std::nullopt);
VerificationReport verify_poschar(const FusionSystem& f, const CharFunctor& w);
VerificationReport verify_theorem_norm(const FusionSystem& f, unsigned n);
VerificationReport verify_theorem_main(const FusionSystem& f, unsigned n);
VerificationReport verify_corollary_exponent(const FusionSystem& f, unsigned n);
VerificationReport verify_theorem_fact(const FusionSystem& f);
VerificationReport verify_frattini(const FusionSystem& f, SubgroupId q);
/// Checks on C_{p^n} wr C_p; with a realization also O_p(F) = 1 on a system
/// whose underlying group has the same order and class.
VerificationReport verify_example_sharpness(unsigned p, unsigned n, const FusionSystem* realization = nullptr,
                                            const Caps& caps = {});
VerificationReport verify_theorem_maingrp(const FusionSystem& f, unsigned n);
VerificationReport verify_saturation(const FusionSystem& f);
VerificationReport verify_alperin_regeneration(const FusionSystem& f);

// ---- Fusion documents and corpus ------------------------------------------------------

struct FusionInstance {
    BuiltGroup built;
    FusionSystem fusion;
    std::string label;
};

/// {"group_realized": {...}} or {"generated": {...}}.
FusionInstance fusion_from_json(const nlohmann::json& doc, const Caps& caps = {});

/// Every verifier id known to the corpus runner and the CLI.
const std::vector<std::string>& verifier_ids();

/// Runs one verifier id; some ids expand to several reports (one per n or per subgroup).
std::vector<VerificationReport> run_verifier(const std::string& id, const FusionInstance& inst,
                                             std::optional<unsigned> n, const Caps& caps = {});

struct CorpusEntry {
    std::string id;
    nlohmann::json fusion;
    std::vector<std::string> verifiers;
    std::optional<unsigned> n;
    Caps caps;
};

struct CorpusSummary {
    std::size_t pass = 0, fail = 0, vacuous = 0, error = 0;
};

std::vector<CorpusEntry> corpus_from_json(const nlohmann::json& doc);
std::vector<CorpusEntry> default_corpus();
/// Errors in one entry become an error report; the run continues.
std::vector<VerificationReport> corpus_run(const std::vector<CorpusEntry>& entries);
CorpusSummary summarize(const std::vector<VerificationReport>& reports);

/// {"schema": "fusion-forge/1", "reports": [...], "summary": {...}}.
nlohmann::json report_document(const std::vector<VerificationReport>& reports, bool timing = false);

} // namespace ff
