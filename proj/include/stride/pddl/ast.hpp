#ifndef STRIDE_PDDL_AST_HPP
#define STRIDE_PDDL_AST_HPP

#include <string>
#include <vector>

namespace stride::pddl {

// A term is a constant name or a variable; variables keep their leading '?'.
inline bool is_variable(const std::string &term) {
    return !term.empty() && term.front() == '?';
}

struct TypedVar {
    std::string name;
    std::string type;
    bool operator==(const TypedVar &) const = default;
};

struct Atom {
    std::string pred;
    std::vector<std::string> args;
    auto operator<=>(const Atom &) const = default;
};

enum class FormulaKind { Literal, Equality, And, Or, Not, Imply, Forall, Exists };

struct Formula {
    FormulaKind kind = FormulaKind::And;
    Atom atom;                   // Literal; Equality uses atom.args[0], atom.args[1]
    std::vector<TypedVar> vars;  // Forall / Exists
    std::vector<Formula> kids;   // And/Or: any; Not/Forall/Exists: 1; Imply: 2

    bool operator==(const Formula &) const = default;

    static Formula literal(Atom a) {
        Formula f;
        f.kind = FormulaKind::Literal;
        f.atom = std::move(a);
        return f;
    }
    static Formula conjunction(std::vector<Formula> kids = {}) {
        Formula f;
        f.kind = FormulaKind::And;
        f.kids = std::move(kids);
        return f;
    }
    static Formula negation(Formula inner) {
        Formula f;
        f.kind = FormulaKind::Not;
        f.kids.push_back(std::move(inner));
        return f;
    }
};

enum class EffectKind { And, Literal, Forall, When };

struct Effect {
    EffectKind kind = EffectKind::And;
    Atom atom;                  // Literal
    bool negated = false;       // Literal
    std::vector<TypedVar> vars; // Forall
    Formula condition;          // When
    std::vector<Effect> kids;   // And: any; Forall/When: 1

    bool operator==(const Effect &) const = default;
};

struct Predicate {
    std::string name;
    std::vector<TypedVar> params;
    bool operator==(const Predicate &) const = default;
};

struct ActionSchema {
    std::string name;
    std::vector<TypedVar> params;
    Formula precondition; // empty conjunction when omitted
    Effect effect;
    bool operator==(const ActionSchema &) const = default;
};

struct DerivationRule {
    std::string pred;
    std::vector<TypedVar> params;
    Formula body;
    bool operator==(const DerivationRule &) const = default;
};

struct Domain {
    std::string name;
    std::vector<std::string> requirements;               // normalized; :adl expanded
    std::vector<std::pair<std::string, std::string>> types; // (type, parent), "object" implicit
    std::vector<TypedVar> constants;
    std::vector<Predicate> predicates;
    std::vector<ActionSchema> schemata;
    std::vector<DerivationRule> derivations;

    bool operator==(const Domain &) const = default;

    bool type_exists(const std::string &t) const {
        if (t == "object")
            return true;
        for (const auto &[name, parent] : types)
            if (name == t)
                return true;
        return false;
    }

    // Single-parent hierarchy rooted at "object".
    bool is_subtype(const std::string &t, const std::string &ancestor) const {
        if (ancestor == "object" || t == ancestor)
            return true;
        std::string cur = t;
        for (std::size_t guard = 0; guard <= types.size(); ++guard) {
            const std::string *parent = nullptr;
            for (const auto &[name, par] : types)
                if (name == cur) {
                    parent = &par;
                    break;
                }
            if (!parent)
                return false;
            if (*parent == ancestor)
                return true;
            cur = *parent;
        }
        return false;
    }

    const Predicate *find_predicate(const std::string &name) const {
        for (const auto &p : predicates)
            if (p.name == name)
                return &p;
        return nullptr;
    }

    bool is_derived_predicate(const std::string &name) const {
        for (const auto &d : derivations)
            if (d.pred == name)
                return true;
        return false;
    }
};

struct Problem {
    std::string name;
    std::string domain_name;
    std::vector<TypedVar> objects;
    std::vector<Atom> init; // set semantics: duplicates collapsed at parse time
    Formula goal;

    bool operator==(const Problem &) const = default;
};

} // namespace stride::pddl

#endif
