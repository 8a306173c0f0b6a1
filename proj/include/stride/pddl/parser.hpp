#ifndef STRIDE_PDDL_PARSER_HPP
#define STRIDE_PDDL_PARSER_HPP

#include "stride/pddl/ast.hpp"
#include "stride/pddl/lexer.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace stride::pddl {

namespace detail {

inline const std::vector<std::string> &supported_requirements() {
    static const std::vector<std::string> reqs = {
        ":strips",
        ":typing",
        ":equality",
        ":negative-preconditions",
        ":disjunctive-preconditions",
        ":quantified-preconditions",
        ":conditional-effects",
        ":derived-predicates",
    };
    return reqs;
}

class Parser {
  public:
    explicit Parser(std::string_view src) : lex_(src) {}

    Domain parse_domain() {
        Domain dom;
        expect_lparen();
        expect_keyword("define");
        expect_lparen();
        expect_keyword("domain");
        dom.name = symbol("domain name").text;
        expect_rparen();

        dom_ = &dom;
        while (lex_.peek().type == Token::Type::LParen) {
            lex_.next();
            Token kw = symbol("section keyword");
            if (kw.text == ":requirements")
                parse_requirements(dom);
            else if (kw.text == ":types")
                parse_types(dom);
            else if (kw.text == ":constants")
                parse_constants(dom);
            else if (kw.text == ":predicates")
                parse_predicates(dom);
            else if (kw.text == ":action")
                parse_action(dom);
            else if (kw.text == ":derived")
                parse_derived(dom, kw.pos);
            else
                fail(kw.pos, "unknown domain section '" + kw.text + "'");
        }
        expect_rparen();
        expect_end();

        // Derived predicates may be declared after the actions that would
        // misuse them, so these checks run once the whole domain is read.
        for (const auto &[action, pred, pos] : effect_atoms_)
            if (dom.is_derived_predicate(pred))
                fail(pos, "derived predicate '" + pred + "' may not appear in an effect of action '" +
                              action + "'");
        for (std::size_t i = 0; i < dom.derivations.size(); ++i)
            check_polarity(dom.derivations[i].body, true, derivation_pos_[i], dom);
        return dom;
    }

    Problem parse_problem(const Domain &dom) {
        dom_ = &dom;
        Problem prob;
        problem_ = &prob;
        expect_lparen();
        expect_keyword("define");
        expect_lparen();
        expect_keyword("problem");
        prob.name = symbol("problem name").text;
        expect_rparen();

        expect_lparen();
        Token dkw = symbol("section keyword");
        if (dkw.text != ":domain")
            fail(dkw.pos, "expected (:domain ...) first in problem");
        Token dname = symbol("domain name");
        prob.domain_name = dname.text;
        if (prob.domain_name != dom.name)
            fail(dname.pos, "problem requires domain '" + prob.domain_name + "' but '" + dom.name +
                                "' was given");
        expect_rparen();

        bool saw_goal = false;
        while (lex_.peek().type == Token::Type::LParen) {
            lex_.next();
            Token kw = symbol("section keyword");
            if (kw.text == ":objects")
                parse_objects(dom, prob);
            else if (kw.text == ":init")
                parse_init(dom, prob);
            else if (kw.text == ":goal") {
                prob.goal = parse_gd();
                saw_goal = true;
                expect_rparen();
            } else
                fail(kw.pos, "unknown problem section '" + kw.text + "'");
        }
        expect_rparen();
        expect_end();
        if (!saw_goal)
            fail(lex_.pos(), "problem has no :goal");
        return prob;
    }

  private:
    Lexer lex_;
    const Domain *dom_ = nullptr;    // domain under construction, or referenced domain
    const Problem *problem_ = nullptr; // non-null while parsing a problem
    std::vector<TypedVar> scope_;
    // (action, predicate, position) for every atom in an effect.
    std::vector<std::tuple<std::string, std::string, SourcePos>> effect_atoms_;
    std::vector<SourcePos> derivation_pos_;

    [[noreturn]] static void fail(SourcePos pos, const std::string &msg) {
        throw ParseError(pos, msg);
    }

    Token expect_lparen() {
        Token t = lex_.next();
        if (t.type != Token::Type::LParen)
            fail(t.pos, "expected '('");
        return t;
    }
    void expect_rparen() {
        Token t = lex_.next();
        if (t.type != Token::Type::RParen)
            fail(t.pos, "expected ')'");
    }
    void expect_end() {
        Token t = lex_.next();
        if (t.type != Token::Type::End)
            fail(t.pos, "trailing content after closing ')'");
    }
    Token symbol(const char *what) {
        Token t = lex_.next();
        if (t.type != Token::Type::Symbol)
            fail(t.pos, std::string("expected ") + what);
        return t;
    }
    void expect_keyword(const std::string &kw) {
        Token t = symbol(("'" + kw + "'").c_str());
        if (t.text != kw)
            fail(t.pos, "expected '" + kw + "', got '" + t.text + "'");
    }

    // names... [- type] repeated until ')'.  The ')' is consumed.
    std::vector<TypedVar> parse_typed_list(bool variables) {
        std::vector<TypedVar> out;
        std::vector<std::string> pending;
        while (lex_.peek().type != Token::Type::RParen) {
            Token t = lex_.next();
            if (t.type != Token::Type::Symbol)
                fail(t.pos, variables ? "expected a variable" : "expected a name");
            if (t.text == "-") {
                if (pending.empty())
                    fail(t.pos, "'-' with no names before it");
                Token ty = lex_.next();
                if (ty.type == Token::Type::LParen)
                    fail(ty.pos, "composite 'either' types are not supported");
                if (ty.type != Token::Type::Symbol)
                    fail(ty.pos, "expected a type name");
                for (auto &n : pending)
                    out.push_back({std::move(n), ty.text});
                pending.clear();
            } else {
                if (variables != is_variable(t.text))
                    fail(t.pos, variables ? "expected a variable (starting with '?')"
                                          : "expected a name, got variable '" + t.text + "'");
                pending.push_back(std::move(t.text));
            }
        }
        lex_.next();
        for (auto &n : pending)
            out.push_back({std::move(n), "object"});
        return out;
    }

    void check_var_types(const std::vector<TypedVar> &vars, SourcePos at) {
        std::set<std::string> seen;
        for (const auto &v : vars) {
            if (!dom_->type_exists(v.type))
                fail(at, "unknown type '" + v.type + "'");
            if (!seen.insert(v.name).second)
                fail(at, "duplicate variable '" + v.name + "'");
        }
    }

    void parse_requirements(Domain &dom) {
        std::set<std::string> have;
        while (lex_.peek().type == Token::Type::Symbol) {
            Token t = lex_.next();
            if (t.text == ":adl") {
                have.insert({":strips", ":typing", ":equality", ":negative-preconditions",
                             ":disjunctive-preconditions", ":quantified-preconditions",
                             ":conditional-effects"});
                continue;
            }
            const auto &ok = supported_requirements();
            if (std::find(ok.begin(), ok.end(), t.text) == ok.end())
                fail(t.pos, "unsupported requirement '" + t.text + "'");
            have.insert(t.text);
        }
        expect_rparen();
        for (const auto &r : supported_requirements())
            if (have.count(r))
                dom.requirements.push_back(r);
    }

    void parse_types(Domain &dom) {
        Token at = lex_.peek();
        std::vector<TypedVar> list = parse_typed_list(false);
        for (auto &[name, parent] : list) {
            if (name == "object") {
                if (parent != "object")
                    fail(at.pos, "type 'object' cannot have a parent");
                continue;
            }
            for (const auto &[n, p] : dom.types)
                if (n == name && p != parent)
                    fail(at.pos, "type '" + name + "' redeclared with a different parent");
            if (!dom.type_exists(name))
                dom.types.emplace_back(name, parent);
        }
        // Parents used without their own declaration default to object.
        for (std::size_t i = 0; i < dom.types.size(); ++i) {
            std::string parent = dom.types[i].second;
            if (!dom.type_exists(parent))
                dom.types.emplace_back(parent, "object");
        }
        for (const auto &[name, parent] : dom.types) {
            if (!dom.is_subtype(name, "object"))
                fail(at.pos, "type hierarchy contains a cycle through '" + name + "'");
        }
    }

    void parse_constants(Domain &dom) {
        Token at = lex_.peek();
        std::vector<TypedVar> list = parse_typed_list(false);
        for (auto &c : list) {
            if (!dom_->type_exists(c.type))
                fail(at.pos, "unknown type '" + c.type + "'");
            for (const auto &prev : dom.constants)
                if (prev.name == c.name)
                    fail(at.pos, "constant '" + c.name + "' redeclared");
            dom.constants.push_back(std::move(c));
        }
    }

    void parse_predicates(Domain &dom) {
        while (lex_.peek().type == Token::Type::LParen) {
            lex_.next();
            Token name = symbol("predicate name");
            if (name.text == "=")
                fail(name.pos, "'=' is reserved for equality");
            if (dom.find_predicate(name.text))
                fail(name.pos, "predicate '" + name.text + "' redeclared");
            Predicate p;
            p.name = name.text;
            p.params = parse_typed_list(true);
            check_var_types(p.params, name.pos);
            dom.predicates.push_back(std::move(p));
        }
        expect_rparen();
    }

    void parse_action(Domain &dom) {
        Token name = symbol("action name");
        for (const auto &a : dom.schemata)
            if (a.name == name.text)
                fail(name.pos, "action '" + name.text + "' redeclared");
        ActionSchema as;
        as.name = name.text;

        Token kw = symbol("':parameters'");
        if (kw.text != ":parameters")
            fail(kw.pos, "expected ':parameters'");
        expect_lparen();
        as.params = parse_typed_list(true);
        check_var_types(as.params, kw.pos);

        scope_ = as.params;
        as.precondition = Formula::conjunction();
        bool saw_effect = false;
        while (lex_.peek().type == Token::Type::Symbol) {
            Token part = lex_.next();
            if (part.text == ":precondition")
                as.precondition = parse_gd();
            else if (part.text == ":effect") {
                as.effect = parse_effect(as.name);
                saw_effect = true;
            } else
                fail(part.pos, "unknown action part '" + part.text + "'");
        }
        expect_rparen();
        if (!saw_effect)
            fail(name.pos, "action '" + as.name + "' has no :effect");
        scope_.clear();
        dom.schemata.push_back(std::move(as));
    }

    void parse_derived(Domain &dom, SourcePos at) {
        expect_lparen();
        Token head = symbol("derived predicate name");
        const Predicate *p = dom.find_predicate(head.text);
        if (!p)
            fail(head.pos, "unknown predicate '" + head.text + "'");
        DerivationRule rule;
        rule.pred = head.text;
        rule.params = parse_typed_list(true);
        check_var_types(rule.params, head.pos);
        if (rule.params.size() != p->params.size())
            fail(head.pos, "predicate '" + head.text + "' takes " +
                               std::to_string(p->params.size()) + " arguments, got " +
                               std::to_string(rule.params.size()));
        scope_ = rule.params;
        rule.body = parse_gd();
        scope_.clear();
        expect_rparen();
        derivation_pos_.push_back(at);
        dom.derivations.push_back(std::move(rule));
    }

    void parse_objects(const Domain &dom, Problem &prob) {
        Token at = lex_.peek();
        std::vector<TypedVar> list = parse_typed_list(false);
        for (auto &o : list) {
            if (!dom.type_exists(o.type))
                fail(at.pos, "unknown type '" + o.type + "'");
            for (const auto &c : dom.constants)
                if (c.name == o.name)
                    fail(at.pos, "object '" + o.name + "' redeclares a domain constant");
            for (const auto &prev : prob.objects)
                if (prev.name == o.name)
                    fail(at.pos, "object '" + o.name + "' redeclared");
            prob.objects.push_back(std::move(o));
        }
    }

    void parse_init(const Domain &dom, Problem &prob) {
        std::set<Atom> seen;
        while (lex_.peek().type == Token::Type::LParen) {
            lex_.next();
            Token head = symbol("predicate name");
            if (head.text == "=")
                fail(head.pos, "equality cannot be asserted in :init");
            if (head.text == "not") {
                // Closed-world: an explicit negative init literal adds nothing.
                expect_lparen();
                parse_init_atom(dom, prob);
                expect_rparen();
                continue;
            }
            Atom a = parse_init_atom_tail(dom, prob, head);
            if (seen.insert(a).second)
                prob.init.push_back(std::move(a));
        }
        expect_rparen();
    }

    void parse_init_atom(const Domain &dom, Problem &prob) {
        Token head = symbol("predicate name");
        if (head.text == "=")
            fail(head.pos, "equality cannot be asserted in :init");
        parse_init_atom_tail(dom, prob, head);
    }

    Atom parse_init_atom_tail(const Domain &dom, const Problem &prob, const Token &head) {
        const Predicate *p = dom.find_predicate(head.text);
        if (!p)
            fail(head.pos, "unknown predicate '" + head.text + "'");
        if (dom.is_derived_predicate(head.text))
            fail(head.pos, "derived predicate '" + head.text + "' may not appear in :init");
        Atom a;
        a.pred = head.text;
        while (lex_.peek().type == Token::Type::Symbol)
            a.args.push_back(lex_.next().text);
        expect_rparen();
        if (a.args.size() != p->params.size())
            fail(head.pos, "predicate '" + head.text + "' takes " +
                               std::to_string(p->params.size()) + " arguments, got " +
                               std::to_string(a.args.size()));
        for (std::size_t i = 0; i < a.args.size(); ++i) {
            const std::string *ty = object_type(a.args[i], prob);
            if (is_variable(a.args[i]) || !ty)
                fail(head.pos, "unknown object '" + a.args[i] + "' in :init");
            if (!dom.is_subtype(*ty, p->params[i].type))
                fail(head.pos, "object '" + a.args[i] + "' is not of type '" +
                                   p->params[i].type + "'");
        }
        return a;
    }

    const std::string *object_type(const std::string &name, const Problem &prob) const {
        for (const auto &c : dom_->constants)
            if (c.name == name)
                return &c.type;
        for (const auto &o : prob.objects)
            if (o.name == name)
                return &o.type;
        return nullptr;
    }

    // A term inside a formula: a scoped variable or a known constant/object.
    std::string parse_term() {
        Token t = symbol("a term");
        if (is_variable(t.text)) {
            for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
                if (it->name == t.text)
                    return t.text;
            fail(t.pos, "unbound variable '" + t.text + "'");
        }
        for (const auto &c : dom_->constants)
            if (c.name == t.text)
                return t.text;
        if (problem_)
            for (const auto &o : problem_->objects)
                if (o.name == t.text)
                    return t.text;
        fail(t.pos, "unknown constant '" + t.text + "'");
    }

    Formula parse_gd() {
        expect_lparen();
        Token head = symbol("a formula");
        Formula f;
        if (head.text == "and" || head.text == "or") {
            f.kind = head.text == "and" ? FormulaKind::And : FormulaKind::Or;
            while (lex_.peek().type == Token::Type::LParen)
                f.kids.push_back(parse_gd());
            expect_rparen();
        } else if (head.text == "not") {
            f.kind = FormulaKind::Not;
            f.kids.push_back(parse_gd());
            expect_rparen();
        } else if (head.text == "imply") {
            f.kind = FormulaKind::Imply;
            f.kids.push_back(parse_gd());
            f.kids.push_back(parse_gd());
            expect_rparen();
        } else if (head.text == "forall" || head.text == "exists") {
            f.kind = head.text == "forall" ? FormulaKind::Forall : FormulaKind::Exists;
            expect_lparen();
            f.vars = parse_typed_list(true);
            check_var_types(f.vars, head.pos);
            std::size_t mark = scope_.size();
            scope_.insert(scope_.end(), f.vars.begin(), f.vars.end());
            f.kids.push_back(parse_gd());
            scope_.resize(mark);
            expect_rparen();
        } else if (head.text == "=") {
            f.kind = FormulaKind::Equality;
            f.atom.pred = "=";
            f.atom.args.push_back(parse_term());
            f.atom.args.push_back(parse_term());
            expect_rparen();
        } else {
            const Predicate *p = dom_->find_predicate(head.text);
            if (!p)
                fail(head.pos, "unknown predicate '" + head.text + "'");
            f.kind = FormulaKind::Literal;
            f.atom.pred = head.text;
            while (lex_.peek().type != Token::Type::RParen)
                f.atom.args.push_back(parse_term());
            lex_.next();
            if (f.atom.args.size() != p->params.size())
                fail(head.pos, "predicate '" + head.text + "' takes " +
                                   std::to_string(p->params.size()) + " arguments, got " +
                                   std::to_string(f.atom.args.size()));
        }
        return f;
    }

    Effect parse_effect(const std::string &action) {
        expect_lparen();
        Token head = symbol("an effect");
        Effect e;
        if (head.text == "and") {
            e.kind = EffectKind::And;
            while (lex_.peek().type == Token::Type::LParen)
                e.kids.push_back(parse_effect(action));
            expect_rparen();
        } else if (head.text == "forall") {
            e.kind = EffectKind::Forall;
            expect_lparen();
            e.vars = parse_typed_list(true);
            check_var_types(e.vars, head.pos);
            std::size_t mark = scope_.size();
            scope_.insert(scope_.end(), e.vars.begin(), e.vars.end());
            e.kids.push_back(parse_effect(action));
            scope_.resize(mark);
            expect_rparen();
        } else if (head.text == "when") {
            e.kind = EffectKind::When;
            e.condition = parse_gd();
            e.kids.push_back(parse_effect(action));
            expect_rparen();
        } else if (head.text == "not") {
            expect_lparen();
            Token inner = symbol("an atom");
            if (inner.text == "=")
                fail(inner.pos, "equality may not appear in an effect");
            e = parse_effect_atom(action, inner);
            e.negated = true;
            expect_rparen();
        } else if (head.text == "=") {
            fail(head.pos, "equality may not appear in an effect");
        } else {
            e = parse_effect_atom(action, head);
        }
        return e;
    }

    Effect parse_effect_atom(const std::string &action, const Token &head) {
        const Predicate *p = dom_->find_predicate(head.text);
        if (!p)
            fail(head.pos, "unknown predicate '" + head.text + "'");
        Effect e;
        e.kind = EffectKind::Literal;
        e.atom.pred = head.text;
        while (lex_.peek().type != Token::Type::RParen)
            e.atom.args.push_back(parse_term());
        lex_.next();
        if (e.atom.args.size() != p->params.size())
            fail(head.pos, "predicate '" + head.text + "' takes " +
                               std::to_string(p->params.size()) + " arguments, got " +
                               std::to_string(e.atom.args.size()));
        effect_atoms_.emplace_back(action, head.text, head.pos);
        return e;
    }

    // A derived predicate may only occur under an even number of negations in
    // a derivation body; that keeps the closure monotone.
    static void check_polarity(const Formula &f, bool positive, SourcePos at, const Domain &dom) {
        switch (f.kind) {
        case FormulaKind::Literal:
            if (!positive && dom.is_derived_predicate(f.atom.pred))
                fail(at, "derived predicate '" + f.atom.pred +
                             "' occurs negatively in a derivation body");
            break;
        case FormulaKind::Equality:
            break;
        case FormulaKind::Not:
            check_polarity(f.kids[0], !positive, at, dom);
            break;
        case FormulaKind::Imply:
            check_polarity(f.kids[0], !positive, at, dom);
            check_polarity(f.kids[1], positive, at, dom);
            break;
        default:
            for (const auto &k : f.kids)
                check_polarity(k, positive, at, dom);
            break;
        }
    }
};

} // namespace detail

inline Domain parse_domain(std::string_view src) {
    return detail::Parser(src).parse_domain();
}

inline Problem parse_problem(std::string_view src, const Domain &dom) {
    return detail::Parser(src).parse_problem(dom);
}

} // namespace stride::pddl

#endif
