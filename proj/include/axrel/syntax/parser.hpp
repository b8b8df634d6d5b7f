#pragma once

// Concrete ASCII syntax.
//
//   formula  := quant | iff
//   quant    := ('A' | 'E') binder+ '.' formula      -- body extends as far as possible
//   binder   := ident ':' ('B' | 'Q')
//   iff      := imp ('<->' imp)*                    -- left associative
//   imp      := or ('->' imp)?                      -- right associative
//   or       := and ('|' and)*
//   and      := unary ('&' unary)*
//   unary    := '!' unary | quant | atom | '(' formula ')'
//   atom     := ('IB'|'Ph'|'Ob'|'IOb') '(' term ')'
//             | 'W' '(' term ',' term ',' term ',' term ',' term ',' term ')'
//             | term ('=' | '<') term
//   term     := prod (('+' | '-') prod)*
//   prod     := power ('*' power)*
//   power    := prim ('^' '2')?
//   prim     := ident | natural | '-' power | '(' term ')'
//
// Identifiers are letters, digits, '_' and trailing primes, starting with a
// letter; the keywords A, E, B, Q, IB, Ph, Ob, IOb and W are reserved. '#'
// starts a comment running to the end of the line.

#include "axrel/syntax/ast.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace axrel::syntax {

/// Sorts of free variables known in advance. Undeclared free variables take
/// the sort of their first use; conflicting later uses raise SortError.
using SortContext = std::map<std::string, Sort>;

FormulaPtr parse(std::string_view text, const SortContext& context = {});
TermPtr parse_term(std::string_view text, const SortContext& context = {});

std::string print(const FormulaPtr& f);
std::string print(const TermPtr& t);

struct NamedFormula {
    enum class Role { Axiom, Theorem };
    Role role = Role::Axiom;
    std::string name;
    FormulaPtr formula;
};

/// Formula files: blocks headed by `axiom NAME:` or `theorem NAME:`, each
/// followed by one sentence running up to the next header.
std::vector<NamedFormula> parse_formula_file(std::string_view text);
std::string print_formula_file(const std::vector<NamedFormula>& items);

}  // namespace axrel::syntax
