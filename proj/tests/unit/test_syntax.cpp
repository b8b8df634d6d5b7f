#include "doctest.h"

#include "axrel/errors.hpp"
#include "axrel/syntax/corpus.hpp"
#include "axrel/syntax/parser.hpp"
#include "formula_gen.hpp"

using namespace axrel::syntax;
using axrel::testing::Gen;
using axrel::testing::free_sorts;

namespace {

std::vector<NamedFormula> full_corpus() {
    std::vector<NamedFormula> all;
    for (const char* name : {"SpecRel", "AccRel", "GenRel(1)", "GenRel(2)", "GenRel(3)"}) {
        auto s = axiom_corpus(name).sentences();
        all.insert(all.end(), s.begin(), s.end());
    }
    auto th = theorem_corpus();
    all.insert(all.end(), th.begin(), th.end());
    return all;
}

}  // namespace

TEST_CASE("parse examples") {
    FormulaPtr f = parse("A o:B . IOb(o) -> W(o,o,0,0,0,0)");
    REQUIRE(f->kind == Formula::Kind::Forall);
    CHECK(f->var_sort == Sort::Body);
    CHECK(f->lhs->kind == Formula::Kind::Implies);
    CHECK(is_sentence(f));

    CHECK_THROWS_AS(parse("W(x,b,0,0,0,0)", {{"x", Sort::Quantity}}), axrel::SortError);
    try {
        parse("W(x,b,0,0,0,0)", {{"x", Sort::Quantity}});
    } catch (const axrel::SortError& e) {
        CHECK(e.expected() == "B");
        CHECK(e.found() == "Q");
        CHECK(e.pos().column == 3);
    }
    CHECK_THROWS_AS(parse("A x:Q . IB(x)"), axrel::SortError);
    CHECK_THROWS_AS(parse("IB(b) & b < 1"), axrel::SortError);
    CHECK_THROWS_AS(parse("A x:Q . x <"), axrel::SyntaxError);
    CHECK_THROWS_AS(parse("x = 1 )"), axrel::SyntaxError);
    CHECK_THROWS_AS(parse("x ^ 3 = 1"), axrel::SyntaxError);
    try {
        parse("A x:Q . x < $");
        FAIL("expected a syntax error");
    } catch (const axrel::SyntaxError& e) {
        CHECK(e.pos().column == 13);
    }
}

TEST_CASE("precedence and binding") {
    // & binds tighter than ->
    FormulaPtr f = parse("x = 0 & y = 0 -> t = 0");
    CHECK(f->kind == Formula::Kind::Implies);
    CHECK(f->lhs->kind == Formula::Kind::And);
    // quantifiers bind as far as possible
    FormulaPtr g = parse("A x:Q . x = x & x < 1 -> 0 < 1");
    REQUIRE(g->kind == Formula::Kind::Forall);
    CHECK(g->lhs->kind == Formula::Kind::Implies);
    // a quantifier as right operand swallows the rest
    FormulaPtr h = parse("y = y & E x:Q . x = y | x < y");
    REQUIRE(h->kind == Formula::Kind::And);
    CHECK(h->rhs->kind == Formula::Kind::Exists);
    CHECK(h->rhs->lhs->kind == Formula::Kind::Or);
    // -> associates to the right
    FormulaPtr i = parse("x = 0 -> y = 0 -> t = 0");
    CHECK(i->rhs->kind == Formula::Kind::Implies);
    // terms
    TermPtr t = parse_term("x - y - t*x^2");
    CHECK(t->kind == Term::Kind::Sub);
    CHECK(t->lhs->kind == Term::Kind::Sub);
    CHECK(t->rhs->kind == Term::Kind::Mul);
    CHECK(t->rhs->rhs->kind == Term::Kind::Square);
    // parenthesized term and parenthesized formula
    CHECK(parse("(x + y)*t = x")->kind == Formula::Kind::Eq);
    CHECK(parse("((x + 1) < y)")->kind == Formula::Kind::Lt);
    // sorts inferred from first use
    FormulaPtr e = parse("o = b & IB(o)");
    auto fv = free_vars(e);
    REQUIRE(fv.size() == 2);
    CHECK(fv[0].sort == Sort::Body);
    CHECK(fv[1].sort == Sort::Body);
}

TEST_CASE("corpus shape") {
    Theory sr = axiom_corpus("SpecRel");
    REQUIRE(sr.axioms.size() == 5);
    const char* names[] = {"AxField", "AxSelf", "AxPh", "AxEv", "AxSymd"};
    for (std::size_t i = 0; i < 5; ++i) CHECK(sr.axioms[i].name == names[i]);
    CHECK(sr.find("AxField")->formulas.size() > 10);
    CHECK(sr.schemas.empty());

    Theory accm = axiom_corpus("AccRelMinus");
    CHECK(accm.axioms.size() == 6);
    CHECK(accm.find("AxCmv") != nullptr);
    CHECK(accm.find("AxCmv")->reconstruction);
    CHECK(!accm.has_schema("IND"));
    CHECK(axiom_corpus("AccRel").has_schema("IND"));

    Theory gr2 = axiom_corpus("GenRel(2)");
    REQUIRE(gr2.axioms.size() == 6);
    CHECK(gr2.find("AxDiff2") != nullptr);
    CHECK(gr2.find("AxSelf-") != nullptr);
    CHECK(gr2.has_schema("IND"));
    CHECK(axiom_corpus("GenRel3").find("AxDiff3") != nullptr);

    CHECK_THROWS_AS(axiom_corpus("GeneralRelativity"), axrel::UnknownTheory);
    CHECK_THROWS_AS(axiom_corpus("GenRel(0)"), axrel::UnknownTheory);

    for (const auto& nf : full_corpus()) {
        CHECK_MESSAGE(is_sentence(nf.formula), nf.name);
        CHECK_NOTHROW(check_sorts(nf.formula));
    }
    FormulaPtr lit = axsymd_literal();
    auto fv = free_vars(lit);
    REQUIRE(fv.size() == 2);
    CHECK(fv[0].name == "z1'");
    CHECK(fv[1].name == "z2'");
}

TEST_CASE("AxSelf prints as expected") {
    FormulaPtr f = axiom_corpus("SpecRel").find("AxSelf")->formulas[0].formula;
    CHECK(print(f) ==
          "A o:B x1:Q x2:Q x3:Q x4:Q . IOb(o) -> (W(o,o,x1,x2,x3,x4) <-> x1 = 0 & x2 = 0 & x3 = 0)");
}

TEST_CASE("parse . print round trip on the corpus") {
    auto corpus = full_corpus();
    std::vector<std::string> printed;
    for (const auto& nf : corpus) {
        std::string s = print(nf.formula);
        FormulaPtr back = parse(s);
        CHECK_MESSAGE(alpha_equal(back, nf.formula), nf.name);
        CHECK(print(back) == s);
        printed.push_back(s);
    }
    // print is injective up to alpha-equivalence
    for (std::size_t i = 0; i < corpus.size(); ++i)
        for (std::size_t j = i + 1; j < corpus.size(); ++j) {
            bool same_text = printed[i] == printed[j];
            bool same_formula = alpha_equal(corpus[i].formula, corpus[j].formula);
            CHECK(same_text == same_formula);
        }
}

TEST_CASE("parse . print round trip on random formulas") {
    Gen g{std::mt19937_64(2024)};
    for (int i = 0; i < 1000; ++i) {
        FormulaPtr f = g.formula(5);
        std::string s = print(f);
        FormulaPtr back = parse(s, free_sorts(f));
        CHECK_MESSAGE(alpha_equal(back, f), s);
    }
}

TEST_CASE("shadowing is renamed apart") {
    FormulaPtr f = forall("x", Sort::Quantity,
                          land(lt(var("x"), one()), exists("x", Sort::Quantity, eq(var("x"), zero()))));
    std::string s = print(f);
    CHECK(s == "A x:Q . x < 1 & E x_1:Q . x_1 = 0");
    CHECK(alpha_equal(parse(s), f));
    // renaming avoids names already in use
    FormulaPtr g = forall(
        "x", Sort::Quantity,
        exists("x", Sort::Quantity, land(eq(var("x"), var("x_1")), lt(var("x"), var("x_2")))));
    FormulaPtr back = parse(print(g), {{"x_1", Sort::Quantity}, {"x_2", Sort::Quantity}});
    CHECK(alpha_equal(back, g));
}

TEST_CASE("alpha equivalence and substitution") {
    CHECK(alpha_equal(parse("A x:Q . x < y"), parse("A z:Q . z < y")));
    CHECK(!alpha_equal(parse("A x:Q . x < y"), parse("A y:Q . y < y")));
    CHECK(!alpha_equal(parse("A x:Q . x < 1"), parse("E x:Q . x < 1")));
    // capture avoidance: substituting x for y under a binder of x
    FormulaPtr f = parse("E x:Q . x < y");
    FormulaPtr g = substitute(f, "y", var("x"));
    CHECK(alpha_equal(g, parse("E z:Q . z < x")));
    CHECK(!alpha_equal(g, parse("E x:Q . x < x")));
}

TEST_CASE("IND instances") {
    FormulaPtr phi = parse("t*t < 1 + 1");
    FormulaPtr ind = instantiate_ind(phi);
    CHECK(is_sentence(ind));
    std::string expected =
        "(E t:Q . t*t < 1 + 1) & (E u:Q . A t:Q . t*t < 1 + 1 -> t < u | t = u) -> E s:Q . "
        "(A t:Q . t*t < 1 + 1 -> t < s | t = s) & A s':Q . (A t:Q . t*t < 1 + 1 -> t < s' | t = s') -> "
        "s < s' | s = s'";
    CHECK(print(ind) == expected);

    // parameters are closed off universally
    FormulaPtr param = instantiate_ind(parse("t < a & W(o,o,0,0,0,t)"), std::string("t"));
    CHECK(is_sentence(param));
    CHECK(param->kind == Formula::Kind::Forall);

    // fresh names avoid the formula's own variables
    FormulaPtr clash = instantiate_ind(parse("t < u + s"), std::string("t"));
    CHECK(is_sentence(clash));
    CHECK(print(clash).find("u_1") != std::string::npos);

    CHECK_THROWS_AS(instantiate_ind(parse("IB(b)")), axrel::NotQuantityVariable);
    CHECK_THROWS_AS(instantiate_ind(parse("IB(b) & t < 1"), std::string("b")), axrel::NotQuantityVariable);
    CHECK_THROWS_AS(instantiate_ind(parse("x < y")), axrel::NotQuantityVariable);
}

TEST_CASE("definitional expansion") {
    FormulaPtr f = expand_definitions(parse("IOb(o)"));
    CHECK(alpha_equal(f, parse("IB(o) & E b:B . E x1:Q . E x2:Q . E x3:Q . E x4:Q . W(o,b,x1,x2,x3,x4)")));

    FormulaPtr plain = parse("A x:Q . x + x < x*x");
    CHECK(expand_definitions(plain) == plain);

    FormulaPtr z = expand_definitions(parse("x = 0"));
    CHECK(alpha_equal(z, parse("E z:Q . (A x_1:Q . z + x_1 = x_1) & x = z")));
    FormulaPtr d = expand_definitions(parse("x - y < 2"));
    CHECK(alpha_equal(d, parse("E d:Q . E u:Q . y + d = x & (A x_1:Q . u*x_1 = x_1) & d < u + u")));

    for (const auto& nf : full_corpus()) {
        FormulaPtr once = expand_definitions(nf.formula);
        CHECK_MESSAGE(!uses_defined_symbols(once), nf.name);
        CHECK(is_sentence(once));
        CHECK_NOTHROW(check_sorts(once));
        CHECK(alpha_equal(expand_definitions(once), once));
        CHECK(alpha_equal(parse(print(once)), once));
    }
}

TEST_CASE("formula files") {
    std::string text =
        "# two blocks\n"
        "axiom Self:\n"
        "  A o:B x1:Q x2:Q x3:Q x4:Q . IOb(o) -> (W(o,o,x1,x2,x3,x4) <-> x1 = 0 & x2 = 0 & x3 = 0)\n"
        "\n"
        "theorem Trivial: A x:Q . x = x\n";
    auto items = parse_formula_file(text);
    REQUIRE(items.size() == 2);
    CHECK(items[0].name == "Self");
    CHECK(items[0].role == NamedFormula::Role::Axiom);
    CHECK(items[1].role == NamedFormula::Role::Theorem);
    auto again = parse_formula_file(print_formula_file(items));
    REQUIRE(again.size() == 2);
    CHECK(alpha_equal(again[0].formula, items[0].formula));
    CHECK(alpha_equal(again[1].formula, items[1].formula));

    try {
        parse_formula_file("axiom X:\n  A x:Q .\n  x <\n");
        FAIL("expected a syntax error");
    } catch (const axrel::SyntaxError& e) {
        CHECK(e.pos().line == 4);
    }
    CHECK_THROWS_AS(parse_formula_file("x = x\n"), axrel::SyntaxError);
}
