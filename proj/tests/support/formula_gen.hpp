#pragma once

#include "axrel/syntax/ast.hpp"
#include "axrel/syntax/parser.hpp"

#include <random>
#include <string>
#include <vector>

namespace axrel::testing {

using namespace axrel::syntax;

// Random well-sorted formulas over a small vocabulary, including shadowing
// and every piece of sugar the printer has to parenthesize.
struct Gen {
    std::mt19937_64 rng;
    std::vector<std::string> bodies{"o", "b"};
    std::vector<std::string> quants{"x", "y", "t"};

    int pick(int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); }

    TermPtr quantity(int depth) {
        if (depth <= 0 || pick(3) == 0) {
            switch (pick(4)) {
                case 0: return numeral(static_cast<unsigned long>(pick(4)));
                default: return var(quants[static_cast<std::size_t>(pick(3))]);
            }
        }
        switch (pick(6)) {
            case 0: return add(quantity(depth - 1), quantity(depth - 1));
            case 1: return mul(quantity(depth - 1), quantity(depth - 1));
            case 2: return sub(quantity(depth - 1), quantity(depth - 1));
            case 3: return neg(quantity(depth - 1));
            case 4: return square(quantity(depth - 1));
            default: return add(quantity(depth - 1), var("x"));
        }
    }

    TermPtr body() { return var(bodies[static_cast<std::size_t>(pick(2))], Sort::Body); }

    FormulaPtr formula(int depth) {
        if (depth <= 0 || pick(4) == 0) {
            switch (pick(6)) {
                case 0: return ib(body());
                case 1: return ph(body());
                case 2: return iob(body());
                case 3: return w(body(), body(), quantity(1), quantity(1), quantity(1), quantity(1));
                case 4: return lt(quantity(2), quantity(2));
                default: return pick(2) ? eq(quantity(2), quantity(2)) : eq(body(), body());
            }
        }
        switch (pick(8)) {
            case 0: return lnot(formula(depth - 1));
            case 1: return land(formula(depth - 1), formula(depth - 1));
            case 2: return lor(formula(depth - 1), formula(depth - 1));
            case 3: return implies(formula(depth - 1), formula(depth - 1));
            case 4: return iff(formula(depth - 1), formula(depth - 1));
            case 5: return forall(quants[static_cast<std::size_t>(pick(3))], Sort::Quantity, formula(depth - 1));
            case 6: return exists(bodies[static_cast<std::size_t>(pick(2))], Sort::Body, formula(depth - 1));
            default: return exists(quants[static_cast<std::size_t>(pick(3))], Sort::Quantity, formula(depth - 1));
        }
    }
};

inline SortContext free_sorts(const FormulaPtr& f) {
    SortContext ctx;
    for (const auto& v : free_vars(f)) ctx[v.name] = v.sort;
    return ctx;
}

}  // namespace axrel::testing
