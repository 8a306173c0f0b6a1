#ifndef STRIDE_PDDL_PRINTER_HPP
#define STRIDE_PDDL_PRINTER_HPP

#include "stride/pddl/ast.hpp"

#include <sstream>
#include <string>

namespace stride::pddl {

namespace detail {

inline void print_typed(std::ostream &os, const std::vector<TypedVar> &list) {
    bool first = true;
    for (std::size_t i = 0; i < list.size();) {
        std::size_t j = i;
        while (j < list.size() && list[j].type == list[i].type)
            ++j;
        for (std::size_t k = i; k < j; ++k) {
            if (!first)
                os << " ";
            first = false;
            os << list[k].name;
        }
        os << " - " << list[i].type;
        i = j;
    }
}

inline void print_atom(std::ostream &os, const Atom &a) {
    os << "(" << a.pred;
    for (const auto &t : a.args)
        os << " " << t;
    os << ")";
}

inline void print_gd(std::ostream &os, const Formula &f) {
    switch (f.kind) {
    case FormulaKind::Literal:
        print_atom(os, f.atom);
        break;
    case FormulaKind::Equality:
        os << "(= " << f.atom.args[0] << " " << f.atom.args[1] << ")";
        break;
    case FormulaKind::And:
    case FormulaKind::Or:
        os << (f.kind == FormulaKind::And ? "(and" : "(or");
        for (const auto &k : f.kids) {
            os << " ";
            print_gd(os, k);
        }
        os << ")";
        break;
    case FormulaKind::Not:
        os << "(not ";
        print_gd(os, f.kids[0]);
        os << ")";
        break;
    case FormulaKind::Imply:
        os << "(imply ";
        print_gd(os, f.kids[0]);
        os << " ";
        print_gd(os, f.kids[1]);
        os << ")";
        break;
    case FormulaKind::Forall:
    case FormulaKind::Exists:
        os << (f.kind == FormulaKind::Forall ? "(forall (" : "(exists (");
        print_typed(os, f.vars);
        os << ") ";
        print_gd(os, f.kids[0]);
        os << ")";
        break;
    }
}

inline void print_effect(std::ostream &os, const Effect &e) {
    switch (e.kind) {
    case EffectKind::Literal:
        if (e.negated)
            os << "(not ";
        print_atom(os, e.atom);
        if (e.negated)
            os << ")";
        break;
    case EffectKind::And:
        os << "(and";
        for (const auto &k : e.kids) {
            os << " ";
            print_effect(os, k);
        }
        os << ")";
        break;
    case EffectKind::Forall:
        os << "(forall (";
        print_typed(os, e.vars);
        os << ") ";
        print_effect(os, e.kids[0]);
        os << ")";
        break;
    case EffectKind::When:
        os << "(when ";
        print_gd(os, e.condition);
        os << " ";
        print_effect(os, e.kids[0]);
        os << ")";
        break;
    }
}

} // namespace detail

inline std::string to_pddl(const Domain &dom) {
    std::ostringstream os;
    os << "(define (domain " << dom.name << ")\n";
    if (!dom.requirements.empty()) {
        os << "  (:requirements";
        for (const auto &r : dom.requirements)
            os << " " << r;
        os << ")\n";
    }
    if (!dom.types.empty()) {
        os << "  (:types";
        for (const auto &[name, parent] : dom.types)
            os << " " << name << " - " << parent;
        os << ")\n";
    }
    if (!dom.constants.empty()) {
        os << "  (:constants ";
        detail::print_typed(os, dom.constants);
        os << ")\n";
    }
    if (!dom.predicates.empty()) {
        os << "  (:predicates\n";
        for (const auto &p : dom.predicates) {
            os << "    (" << p.name;
            if (!p.params.empty()) {
                os << " ";
                detail::print_typed(os, p.params);
            }
            os << ")\n";
        }
        os << "  )\n";
    }
    for (const auto &d : dom.derivations) {
        os << "  (:derived (" << d.pred;
        if (!d.params.empty()) {
            os << " ";
            detail::print_typed(os, d.params);
        }
        os << ")\n    ";
        detail::print_gd(os, d.body);
        os << ")\n";
    }
    for (const auto &a : dom.schemata) {
        os << "  (:action " << a.name << "\n    :parameters (";
        detail::print_typed(os, a.params);
        os << ")\n    :precondition ";
        detail::print_gd(os, a.precondition);
        os << "\n    :effect ";
        detail::print_effect(os, a.effect);
        os << ")\n";
    }
    os << ")\n";
    return os.str();
}

inline std::string to_pddl(const Problem &prob) {
    std::ostringstream os;
    os << "(define (problem " << prob.name << ")\n";
    os << "  (:domain " << prob.domain_name << ")\n";
    if (!prob.objects.empty()) {
        os << "  (:objects ";
        detail::print_typed(os, prob.objects);
        os << ")\n";
    }
    os << "  (:init";
    for (const auto &a : prob.init) {
        os << " ";
        detail::print_atom(os, a);
    }
    os << ")\n";
    os << "  (:goal ";
    detail::print_gd(os, prob.goal);
    os << ")\n";
    os << ")\n";
    return os.str();
}

} // namespace stride::pddl

#endif
