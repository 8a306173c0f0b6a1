#ifndef STRIDE_NNF_HPP
#define STRIDE_NNF_HPP

#include "stride/pddl/ast.hpp"

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace stride {

// Negation normal form over dense proposition ids.  An empty And is true, an
// empty Or is false; the builders below fold those through, so client code
// can test for them directly.
struct Nnf {
    enum class Kind { And, Or, Pos, Neg };
    Kind kind = Kind::And;
    int prop = -1;              // Pos / Neg
    std::vector<Nnf> kids;      // And / Or

    bool operator==(const Nnf &) const = default;

    bool is_true() const { return kind == Kind::And && kids.empty(); }
    bool is_false() const { return kind == Kind::Or && kids.empty(); }

    static Nnf truth() { return Nnf{}; }
    static Nnf falsity() {
        Nnf n;
        n.kind = Kind::Or;
        return n;
    }
    static Nnf pos(int p) {
        Nnf n;
        n.kind = Kind::Pos;
        n.prop = p;
        return n;
    }
    static Nnf neg(int p) {
        Nnf n;
        n.kind = Kind::Neg;
        n.prop = p;
        return n;
    }

    // Flattens same-kind children, folds constants, collapses single children.
    static Nnf conjunction(std::vector<Nnf> kids) {
        Nnf n;
        n.kind = Kind::And;
        for (auto &k : kids) {
            if (k.is_true())
                continue;
            if (k.is_false())
                return falsity();
            if (k.kind == Kind::And)
                for (auto &kk : k.kids)
                    n.kids.push_back(std::move(kk));
            else
                n.kids.push_back(std::move(k));
        }
        if (n.kids.size() == 1)
            return std::move(n.kids.front());
        return n;
    }
    static Nnf disjunction(std::vector<Nnf> kids) {
        Nnf n;
        n.kind = Kind::Or;
        for (auto &k : kids) {
            if (k.is_false())
                continue;
            if (k.is_true())
                return truth();
            if (k.kind == Kind::Or)
                for (auto &kk : k.kids)
                    n.kids.push_back(std::move(kk));
            else
                n.kids.push_back(std::move(k));
        }
        if (n.kids.size() == 1)
            return std::move(n.kids.front());
        return n;
    }
};

// How a ground atom resolves when a formula is lowered to NNF: a static truth
// value folded away at ground time, or a dynamic proposition id.
struct LeafResolution {
    enum class Kind { True, False, Dynamic };
    Kind kind;
    int prop = -1;

    static LeafResolution yes() { return {Kind::True, -1}; }
    static LeafResolution no() { return {Kind::False, -1}; }
    static LeafResolution dynamic(int p) { return {Kind::Dynamic, p}; }
};

using LeafResolver = std::function<LeafResolution(const pddl::Atom &)>;

namespace detail {

inline Nnf to_nnf_rec(const pddl::Formula &f, bool positive, const LeafResolver &resolve) {
    using pddl::FormulaKind;
    switch (f.kind) {
    case FormulaKind::Literal:
    case FormulaKind::Equality: {
        LeafResolution r = resolve(f.atom);
        switch (r.kind) {
        case LeafResolution::Kind::True:
            return positive ? Nnf::truth() : Nnf::falsity();
        case LeafResolution::Kind::False:
            return positive ? Nnf::falsity() : Nnf::truth();
        case LeafResolution::Kind::Dynamic:
            return positive ? Nnf::pos(r.prop) : Nnf::neg(r.prop);
        }
        throw std::logic_error("unreachable");
    }
    case FormulaKind::And:
    case FormulaKind::Or: {
        std::vector<Nnf> kids;
        kids.reserve(f.kids.size());
        for (const auto &k : f.kids)
            kids.push_back(to_nnf_rec(k, positive, resolve));
        bool conj = (f.kind == FormulaKind::And) == positive;
        return conj ? Nnf::conjunction(std::move(kids)) : Nnf::disjunction(std::move(kids));
    }
    case FormulaKind::Not:
        return to_nnf_rec(f.kids[0], !positive, resolve);
    case FormulaKind::Imply: {
        std::vector<Nnf> kids;
        kids.push_back(to_nnf_rec(f.kids[0], !positive, resolve));
        kids.push_back(to_nnf_rec(f.kids[1], positive, resolve));
        return positive ? Nnf::disjunction(std::move(kids)) : Nnf::conjunction(std::move(kids));
    }
    case FormulaKind::Forall:
    case FormulaKind::Exists:
        throw std::logic_error("quantifier reached NNF conversion; enumerate first");
    }
    throw std::logic_error("unreachable");
}

} // namespace detail

inline Nnf to_nnf(const pddl::Formula &f, const LeafResolver &resolve) {
    return detail::to_nnf_rec(f, true, resolve);
}

// Replaces variables by env bindings; quantifier-bound names shadow outer
// bindings.
inline pddl::Formula substitute(const pddl::Formula &f,
                                const std::map<std::string, std::string> &env) {
    using pddl::FormulaKind;
    pddl::Formula out = f;
    switch (f.kind) {
    case FormulaKind::Literal:
    case FormulaKind::Equality:
        for (auto &t : out.atom.args)
            if (auto it = env.find(t); it != env.end())
                t = it->second;
        return out;
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
        std::map<std::string, std::string> inner = env;
        for (const auto &v : f.vars)
            inner.erase(v.name);
        out.kids[0] = substitute(f.kids[0], inner);
        return out;
    }
    default:
        for (std::size_t i = 0; i < f.kids.size(); ++i)
            out.kids[i] = substitute(f.kids[i], env);
        return out;
    }
}

using ObjectsOfType = std::function<const std::vector<std::string> &(const std::string &type)>;

// Expands forall into a conjunction and exists into a disjunction over the
// type-compatible objects.  An empty type yields the empty connective (true
// for forall, false for exists).  Enumeration order follows the provider's
// object order, rightmost variable varying fastest.
inline pddl::Formula enumerate_quantifiers(const pddl::Formula &f, const ObjectsOfType &objects) {
    using pddl::Formula;
    using pddl::FormulaKind;
    switch (f.kind) {
    case FormulaKind::Literal:
    case FormulaKind::Equality:
        return f;
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
        std::vector<const std::vector<std::string> *> domains;
        domains.reserve(f.vars.size());
        for (const auto &v : f.vars)
            domains.push_back(&objects(v.type));
        Formula out;
        out.kind = f.kind == FormulaKind::Forall ? FormulaKind::And : FormulaKind::Or;
        if (f.vars.empty()) {
            out.kids.push_back(enumerate_quantifiers(f.kids[0], objects));
            return out;
        }
        bool empty = false;
        for (const auto *d : domains)
            empty = empty || d->empty();
        if (empty)
            return out;
        std::vector<std::size_t> idx(f.vars.size(), 0);
        for (;;) {
            std::map<std::string, std::string> env;
            for (std::size_t i = 0; i < f.vars.size(); ++i)
                env[f.vars[i].name] = (*domains[i])[idx[i]];
            out.kids.push_back(enumerate_quantifiers(substitute(f.kids[0], env), objects));
            std::size_t i = f.vars.size();
            while (i > 0) {
                --i;
                if (++idx[i] < domains[i]->size())
                    break;
                idx[i] = 0;
                if (i == 0)
                    return out;
            }
        }
    }
    default: {
        Formula out = f;
        for (std::size_t i = 0; i < f.kids.size(); ++i)
            out.kids[i] = enumerate_quantifiers(f.kids[i], objects);
        return out;
    }
    }
}

} // namespace stride

#endif
