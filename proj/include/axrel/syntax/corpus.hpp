#pragma once

// The axiom corpus, the IND schema and definitional expansion.
//
// IND instance shape for a formula phi(t, p1..pk) with distinguished
// quantity variable t and parameters p1..pk:
//
//   A p1 .. pk . ((E t . phi) & (E u . A t . phi -> t < u | t = u))
//                -> E s . (A t . phi -> t < s | t = s)
//                         & (A s' . (A t . phi -> t < s' | t = s') -> s < s' | s = s')
//
// u, s and s' are chosen fresh for phi.

#include "axrel/syntax/ast.hpp"
#include "axrel/syntax/parser.hpp"

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace axrel::syntax {

struct Axiom {
    std::string name;
    /// AxField is a group of ordered-field sentences; every other axiom has one.
    std::vector<NamedFormula> formulas;
    /// The first-order shape is our formalization of an axiom stated in prose.
    bool reconstruction = false;
    std::string note;
};

struct SchemaGenerator {
    std::string name;
    std::function<FormulaPtr(const FormulaPtr&, const std::string&)> instantiate;
};

struct Theory {
    std::string name;
    std::vector<Axiom> axioms;
    std::vector<SchemaGenerator> schemas;

    const Axiom* find(std::string_view axiom) const;
    bool has_schema(std::string_view schema) const;
    /// Every sentence of every axiom, in corpus order.
    std::vector<NamedFormula> sentences() const;
};

/// name: SpecRel, AccRelMinus, AccRel or GenRel(n) with n >= 1.
Theory axiom_corpus(std::string_view name);

/// AxSymd exactly as displayed, whose right-hand side mentions unprimed
/// pairs of primed coordinates and the otherwise unused z1', z2'. It has free
/// variables and is kept for reference; the corpus uses the corrected form.
FormulaPtr axsymd_literal();

/// Theorems checked semantically: NoFTL (literal and directed), MuInvariance.
std::vector<NamedFormula> theorem_corpus();
FormulaPtr theorem(std::string_view name);

/// Builds the IND instance for phi. Without `distinguished`, phi must have
/// exactly one free quantity variable named t, or exactly one free quantity
/// variable. Throws NotQuantityVariable otherwise or if the variable given
/// is body-sorted or not free in phi.
FormulaPtr instantiate_ind(const FormulaPtr& phi, std::optional<std::string> distinguished = std::nullopt);

/// Removes Ob, IOb, 0, 1, numerals, subtraction, unary minus and squaring.
/// Each atom with defined quantity terms becomes E v1..vk . defs & atom'
/// where every v is pinned down by its defining condition:
///   0:      A x . v + x = x
///   1:      A x . v * x = x
///   a - b:  b + v = a
///   -a:     a + v = z    (z the zero of the same atom)
FormulaPtr expand_definitions(const FormulaPtr& f);
bool uses_defined_symbols(const FormulaPtr& f);

}  // namespace axrel::syntax
