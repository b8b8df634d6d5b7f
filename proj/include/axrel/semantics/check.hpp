#pragma once

// Axiom checking. Where a structure's charts are affine the axioms reduce to
// identities of the chart maps, decided by exact linear algebra (certified
// verdicts). Anything outside those reductions is handed to evaluate().

#include "axrel/semantics/evaluate.hpp"
#include "axrel/syntax/corpus.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace axrel {

/// Checks one axiom of the corpus by name (AxSelf, AxPh, ..., AxCmv,
/// AxSelf-, AxDiff3, IND). Multi-sentence axioms (AxField) fold their
/// sentences: the first failure wins. Throws UnknownAxiom.
Verdict check_axiom(const Structure& s, std::string_view axiom, const Budget& b = {});

/// The same, for a named sentence of an explicit theory.
Verdict check_sentence(const Structure& s, const syntax::NamedFormula& f, const Budget& b = {});

struct IndInstance {
    std::string name;
    syntax::FormulaPtr phi;
    std::string t = "t";
};

/// Instance formulas of the IND schema used by theory checks: bounded,
/// nonempty, interval-definable sets, from the field language and from
/// worldview atoms.
std::vector<IndInstance> ind_battery();

/// Decides an IND instance: for every parameter assignment (bodies from the
/// named bodies plus family representatives, quantities sampled) the set
/// {t : phi} is computed exactly and its supremum recorded. The evidence
/// carries the supremum of the first nonempty bounded set as `s`.
Verdict check_ind(const Structure& s, const IndInstance& inst, const Budget& b = {});

struct AxiomRecord {
    std::string name;
    Verdict verdict;
};

struct TheoryReport {
    std::string theory;
    std::string model;
    Budget budget;
    std::vector<AxiomRecord> records;

    bool all_hold() const;
    /// Machine-readable report: one record per axiom with evidence values as
    /// field literals and budget statistics. Stable for a fixed seed.
    std::string to_json() const;
    /// Aligned text table.
    std::string to_text() const;
};

/// Every axiom of t, plus the IND battery when t carries the schema.
TheoryReport check_theory(const Structure& s, const syntax::Theory& t, const Budget& b = {});

}  // namespace axrel
