#pragma once

// Tarskian evaluation of formulas in structures.
//
// Body quantifiers range over the named bodies plus the intensional photon
// and inertial families. Family members are synthesized on demand: lines
// through the events the quantified body is asked about, in every membership
// pattern a line can realize, so that a body quantifier whose W atoms all sit
// at determined events is decided exactly.
//
// Quantity quantifiers try the critical values of the atoms in scope (roots
// of the atoms that are polynomial in a single unbound variable, degree at
// most two), one point in each cell between them, solver candidates for
// W-tuples (points on worldlines, corresponding events), and a seeded sample
// pool. When every atom mentioning the variable is such a univariate atom or
// a bare comparison with another such variable, truth is constant on the
// cells and the quantifier is decided; otherwise the answer is sampled.

#include "axrel/model/structure.hpp"
#include "axrel/semantics/verdict.hpp"
#include "axrel/syntax/ast.hpp"

#include <optional>

namespace axrel {

/// Throws UnboundVariable for free variables missing from `a`, SortError for
/// ill-sorted formulas or sort-mismatched bindings.
Verdict evaluate(const Structure& s, const syntax::FormulaPtr& f, const Assignment& a = {}, const Budget& b = {});

/// Value of a quantity term; throws UnboundVariable.
ExactReal eval_term(const syntax::TermPtr& t, const Assignment& a);

/// Re-evaluates a counterexample or witness: binds the evidence for the
/// leading quantifier block of f and evaluates the rest.
Verdict recheck(const Structure& s, const syntax::FormulaPtr& f, const Verdict& v, const Budget& b = {});

/// The photon through o-locations x and x2 when they are lightlike separated
/// (a photon along o's first axis when they coincide), synthesized from the
/// photon family; none otherwise. Requires o to have an affine chart and the
/// photon family to be on.
std::optional<Body> witness_photon(const Structure& s, const std::string& o, const Coord4& x, const Coord4& x2);
/// The inertial body through two timelike separated o-locations.
std::optional<Body> witness_inertial(const Structure& s, const std::string& o, const Coord4& x, const Coord4& x2);

/// The set {t : phi} for fixed values of phi's other free variables.
struct DefinableSet {
    bool nonempty = false;
    bool bounded_above = false;
    std::optional<ExactReal> sup;  // when nonempty and bounded above
    bool attained = false;
    /// Cell endpoints, ascending: truth is constant between them.
    std::vector<ExactReal> critical;
};
/// Decides the set exactly when every atom mentioning t is solvable in t
/// alone (or a bare comparison with such a variable) and phi is decided on
/// each cell; nullopt otherwise.
std::optional<DefinableSet> definable_set(const Structure& s, const syntax::FormulaPtr& phi, const std::string& t,
                                          const Assignment& a = {}, const Budget& b = {});

/// Family members, with canonical ids so that equal lines compare equal.
Body family_photon(const Coord4& through, const Vec3& direction);
Body family_inertial(const Coord4& through, const Vec3& velocity);

}  // namespace axrel
