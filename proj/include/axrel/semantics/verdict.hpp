#pragma once

// Outcomes of model checking.
//
// A verdict is Holds, Fails or Unknown. Fails always carries the assignment
// that refutes the formula; Holds of an existential carries a witness. The
// basis records how the answer was reached: an analytic verifier
// (certified), an exhaustive exact evaluation (decided) or finite sampling
// (sampled). Numeric verdicts also carry the tolerance they were made at.

#include "axrel/field/exact_real.hpp"
#include "axrel/model/worldline.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace axrel {

enum class Outcome { Holds, Fails, Unknown };
enum class Basis { Certified, Decided, Sampled, Numeric };

const char* outcome_name(Outcome o);
const char* basis_name(Basis b);

using BodyRef = std::shared_ptr<const Body>;
/// A body (named or synthesized from an intensional family) or a quantity.
using Value = std::variant<BodyRef, ExactReal>;

std::string value_string(const Value& v);
bool same_value(const Value& a, const Value& b);

struct Binding {
    std::string name;
    Value value;
};

/// Ordered variable bindings; later bindings shadow earlier ones.
class Assignment {
public:
    void bind(std::string name, Value v);
    const Value* find(const std::string& name) const;
    const std::vector<Binding>& bindings() const { return items_; }
    std::size_t size() const { return items_.size(); }
    void pop() { items_.pop_back(); }
    /// Canonical text, also used to derive sampling seeds.
    std::string key() const;

private:
    std::vector<Binding> items_;
};

struct Budget {
    /// Candidates tried per quantifier block.
    std::size_t samples = 24;
    /// Total atom evaluations before giving up with Unknown.
    std::size_t max_steps = 2'000'000;
    std::uint64_t seed = 1;
};

struct BudgetReport {
    std::size_t samples = 0;       // candidates drawn by quantifier blocks
    std::size_t solver_calls = 0;  // witness and root solver invocations
    std::size_t steps = 0;         // atom evaluations
    bool exhausted = false;
};

struct Verdict {
    Outcome outcome = Outcome::Unknown;
    Basis basis = Basis::Sampled;
    /// Counterexample for Fails, witness for Holds of an existential; the
    /// bindings of the quantifier prefix in order.
    std::vector<Binding> evidence;
    std::string note;
    BudgetReport budget;
    std::optional<double> tolerance;

    bool holds() const { return outcome == Outcome::Holds; }
    bool fails() const { return outcome == Outcome::Fails; }
    /// "Holds (certified)", "Fails (decided)", ...
    std::string label() const;
};

Verdict holds(Basis basis, std::string note = {});
Verdict fails(Basis basis, std::vector<Binding> evidence, std::string note = {});
Verdict unknown(std::string note);

}  // namespace axrel
