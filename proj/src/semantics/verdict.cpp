#include "axrel/semantics/verdict.hpp"

namespace axrel {

const char* outcome_name(Outcome o) {
    switch (o) {
        case Outcome::Holds: return "Holds";
        case Outcome::Fails: return "Fails";
        case Outcome::Unknown: return "Unknown";
    }
    return "?";
}

const char* basis_name(Basis b) {
    switch (b) {
        case Basis::Certified: return "certified";
        case Basis::Decided: return "decided";
        case Basis::Sampled: return "sampled";
        case Basis::Numeric: return "numeric";
    }
    return "?";
}

std::string value_string(const Value& v) {
    if (auto* b = std::get_if<BodyRef>(&v)) return (*b)->id;
    return std::get<ExactReal>(v).to_string();
}

bool same_value(const Value& a, const Value& b) {
    if (a.index() != b.index()) return false;
    if (auto* x = std::get_if<BodyRef>(&a)) return (*x)->id == std::get<BodyRef>(b)->id;
    return std::get<ExactReal>(a) == std::get<ExactReal>(b);
}

void Assignment::bind(std::string name, Value v) { items_.push_back({std::move(name), std::move(v)}); }

const Value* Assignment::find(const std::string& name) const {
    for (auto it = items_.rbegin(); it != items_.rend(); ++it)
        if (it->name == name) return &it->value;
    return nullptr;
}

std::string Assignment::key() const {
    std::string k;
    for (const auto& b : items_) {
        k += b.name;
        k += '=';
        k += value_string(b.value);
        k += ';';
    }
    return k;
}

std::string Verdict::label() const {
    if (outcome == Outcome::Unknown) return "Unknown";
    return std::string(outcome_name(outcome)) + " (" + basis_name(basis) + ")";
}

Verdict holds(Basis basis, std::string note) {
    Verdict v;
    v.outcome = Outcome::Holds;
    v.basis = basis;
    v.note = std::move(note);
    return v;
}

Verdict fails(Basis basis, std::vector<Binding> evidence, std::string note) {
    Verdict v;
    v.outcome = Outcome::Fails;
    v.basis = basis;
    v.evidence = std::move(evidence);
    v.note = std::move(note);
    return v;
}

Verdict unknown(std::string note) {
    Verdict v;
    v.outcome = Outcome::Unknown;
    v.note = std::move(note);
    return v;
}

}  // namespace axrel
