#include "catch2/catch_amalgamated.hpp"

#include "fixtures.hpp"
#include "stride/pddl/parser.hpp"
#include "stride/pddl/printer.hpp"

using namespace stride::pddl;

namespace {

Domain dom(const std::string &text) { return parse_domain(text); }

Problem prob(const std::string &text, const Domain &d) { return parse_problem(text, d); }

const char *tiny_domain = R"(
(define (domain tiny)
  (:requirements :strips :negative-preconditions)
  (:predicates (a) (b) (c))
  (:action go
    :parameters ()
    :precondition (and (a) (not (b)))
    :effect (and (b) (not (a)))))
)";

} // namespace

TEST_CASE("lexer basics") {
    Lexer lex("(Foo ;; comment\n  BAR-baz)");
    REQUIRE(lex.next().type == Token::Type::LParen);
    Token t = lex.next();
    REQUIRE(t.type == Token::Type::Symbol);
    REQUIRE(t.text == "foo");
    t = lex.next();
    REQUIRE(t.text == "bar-baz");
    REQUIRE(t.pos.line == 2);
    REQUIRE(lex.next().type == Token::Type::RParen);
    REQUIRE(lex.next().type == Token::Type::End);
}

TEST_CASE("tiny domain parses") {
    Domain d = dom(tiny_domain);
    REQUIRE(d.name == "tiny");
    REQUIRE(d.requirements ==
            std::vector<std::string>{":strips", ":negative-preconditions"});
    REQUIRE(d.predicates.size() == 3);
    REQUIRE(d.schemata.size() == 1);
    const ActionSchema &go = d.schemata[0];
    REQUIRE(go.params.empty());
    REQUIRE(go.precondition.kind == FormulaKind::And);
    REQUIRE(go.precondition.kids.size() == 2);
    REQUIRE(go.precondition.kids[1].kind == FormulaKind::Not);
    REQUIRE(go.effect.kids.size() == 2);
    REQUIRE(go.effect.kids[1].negated);
}

TEST_CASE("adl requirement expands and case folds") {
    Domain d = dom("(define (domain X) (:requirements :ADL) (:predicates (P ?x)))");
    REQUIRE(d.name == "x");
    REQUIRE(d.requirements == std::vector<std::string>{
                                  ":strips", ":typing", ":equality",
                                  ":negative-preconditions", ":disjunctive-preconditions",
                                  ":quantified-preconditions", ":conditional-effects"});
    REQUIRE(d.predicates[0].name == "p");
    REQUIRE(d.predicates[0].params[0].type == "object");
}

TEST_CASE("unsupported requirement is a hard error naming the flag") {
    try {
        dom("(define (domain x) (:requirements :strips :fluents))");
        FAIL("expected ParseError");
    } catch (const ParseError &e) {
        REQUIRE(e.message.find(":fluents") != std::string::npos);
        REQUIRE(e.pos.line == 1);
    }
}

TEST_CASE("type hierarchy with implicit parents") {
    Domain d = dom("(define (domain x) (:types car truck - vehicle) (:predicates (ok)))");
    REQUIRE(d.type_exists("vehicle"));
    REQUIRE(d.is_subtype("car", "vehicle"));
    REQUIRE(d.is_subtype("car", "object"));
    REQUIRE_FALSE(d.is_subtype("vehicle", "car"));
    REQUIRE_FALSE(d.is_subtype("car", "truck"));
}

TEST_CASE("either types rejected") {
    REQUIRE_THROWS_AS(
        dom("(define (domain x) (:types a b) (:predicates (p ?x - (either a b))))"),
        ParseError);
}

TEST_CASE("parse errors carry positions and reasons") {
    struct Case {
        const char *src;
        const char *needle;
    };
    const Case cases[] = {
        {"(define (domain x) (:predicates (p)) (:action a :parameters () "
         ":precondition (q) :effect (p)))",
         "unknown predicate 'q'"},
        {"(define (domain x) (:predicates (p ?x)) (:action a :parameters () "
         ":precondition (p) :effect (p c)))",
         "takes 1 arguments, got 0"},
        {"(define (domain x) (:predicates (p ?x)) (:action a :parameters () "
         ":precondition (and) :effect (p ?y)))",
         "unbound variable '?y'"},
        {"(define (domain x) (:predicates (p ?x - zone)))", "unknown type 'zone'"},
        {"(define (domain x) (:predicates (p)) (:action a :parameters () "
         ":precondition (and) :effect (= a b)))",
         "equality may not appear in an effect"},
        {"(define (domain x) (:predicates (=)))", "reserved"},
        {"(define (domain x) (:predicates (p)) (:wibble))", "unknown domain section"},
    };
    for (const auto &c : cases) {
        INFO(c.src);
        try {
            dom(c.src);
            FAIL("expected ParseError");
        } catch (const ParseError &e) {
            INFO(e.what());
            REQUIRE(std::string(e.what()).find(c.needle) != std::string::npos);
            REQUIRE(e.pos.line >= 1);
            REQUIRE(e.pos.col >= 1);
        }
    }
}

TEST_CASE("derivation rules: shape, misuse, stratification") {
    Domain d = dom(fixtures::blocks_domain());
    REQUIRE(d.derivations.size() == 1);
    const DerivationRule &r = d.derivations[0];
    REQUIRE(r.pred == "above");
    REQUIRE(r.params.size() == 2);
    REQUIRE(r.body.kind == FormulaKind::And);
    REQUIRE(d.is_derived_predicate("above"));
    REQUIRE_FALSE(d.is_derived_predicate("on"));

    SECTION("derived predicate in an effect is rejected") {
        REQUIRE_THROWS_WITH(
            dom("(define (domain x) (:predicates (p) (d)) (:derived (d) (p)) "
                "(:action a :parameters () :precondition (p) :effect (d)))"),
            Catch::Matchers::ContainsSubstring("derived predicate 'd'"));
        // ... also when the rule appears after the action.
        REQUIRE_THROWS_WITH(
            dom("(define (domain x) (:predicates (p) (d)) "
                "(:action a :parameters () :precondition (p) :effect (not (d))) "
                "(:derived (d) (p)))"),
            Catch::Matchers::ContainsSubstring("derived predicate 'd'"));
    }
    SECTION("negated derived predicate in a derivation body is rejected") {
        REQUIRE_THROWS_WITH(
            dom("(define (domain x) (:predicates (p) (d) (e)) (:derived (d) (not (e))) "
                "(:derived (e) (p)))"),
            Catch::Matchers::ContainsSubstring("occurs negatively"));
        // imply's antecedent is a negative position.
        REQUIRE_THROWS_WITH(
            dom("(define (domain x) (:predicates (p) (d) (e)) "
                "(:derived (d) (imply (e) (p))) (:derived (e) (p)))"),
            Catch::Matchers::ContainsSubstring("occurs negatively"));
        // double negation is fine.
        REQUIRE_NOTHROW(
            dom("(define (domain x) (:predicates (p) (d) (e)) "
                "(:derived (d) (not (not (e)))) (:derived (e) (p)))"));
    }
}

TEST_CASE("problem parsing against gripper") {
    Domain d = dom(fixtures::gripper_domain());
    Problem p = prob(fixtures::gripper_problem(2), d);
    REQUIRE(p.name == "gripper-2");
    REQUIRE(p.objects.size() == 6);
    REQUIRE(p.init.size() == 5);
    REQUIRE(p.init[0] == Atom{"at-robby", {"room1"}});
    REQUIRE(p.init[3] == Atom{"at", {"ball1", "room1"}});
    REQUIRE(p.goal.kind == FormulaKind::And);
    REQUIRE(p.goal.kids.size() == 2);
    REQUIRE(p.goal.kids[0] == Formula::literal(Atom{"at", {"ball1", "room2"}}));

    SECTION("domain name mismatch") {
        REQUIRE_THROWS_WITH(prob("(define (problem p) (:domain blocks) (:goal (and)))", d),
                            Catch::Matchers::ContainsSubstring("blocks"));
    }
    SECTION("init atoms are type checked") {
        REQUIRE_THROWS_WITH(
            prob("(define (problem p) (:domain gripper) (:objects r - room b - ball) "
                 "(:init (at-robby b)) (:goal (and)))",
                 d),
            Catch::Matchers::ContainsSubstring("not of type 'room'"));
    }
    SECTION("unknown object in init") {
        REQUIRE_THROWS_WITH(prob("(define (problem p) (:domain gripper) "
                                 "(:init (at-robby nowhere)) (:goal (and)))",
                                 d),
                            Catch::Matchers::ContainsSubstring("unknown object"));
    }
    SECTION("duplicate init atoms collapse") {
        Problem q = prob("(define (problem p) (:domain gripper) (:objects r - room) "
                         "(:init (at-robby r) (at-robby r)) (:goal (and)))",
                         d);
        REQUIRE(q.init.size() == 1);
    }
    SECTION("negative init literals are accepted and ignored") {
        Problem q = prob("(define (problem p) (:domain gripper) (:objects r - room) "
                         "(:init (not (at-robby r))) (:goal (and)))",
                         d);
        REQUIRE(q.init.empty());
    }
    SECTION("derived predicates forbidden in init") {
        Domain bd = dom(fixtures::blocks_domain());
        REQUIRE_THROWS_WITH(prob("(define (problem p) (:domain blocks) (:objects a b - block) "
                                 "(:init (above a b)) (:goal (and)))",
                                 bd),
                            Catch::Matchers::ContainsSubstring("may not appear in :init"));
    }
    SECTION("goal is required") {
        REQUIRE_THROWS_WITH(prob("(define (problem p) (:domain gripper))", d),
                            Catch::Matchers::ContainsSubstring("no :goal"));
    }
}

TEST_CASE("quantifiers, equality, imply in goals") {
    Domain d = dom(fixtures::kiln_domain());
    Problem p = prob(fixtures::kiln_problem(3), d);
    REQUIRE(p.goal.kind == FormulaKind::Forall);
    REQUIRE(p.goal.vars == std::vector<TypedVar>{{"?p", "piece"}});
    REQUIRE(p.goal.kids[0] == Formula::literal(Atom{"fired", {"?p"}}));

    Domain g = dom(fixtures::gripper_domain());
    Problem q = prob("(define (problem p) (:domain gripper) (:objects r1 r2 - room) "
                     "(:init (at-robby r1)) "
                     "(:goal (exists (?r - room) (and (imply (at-robby ?r) (at-robby ?r)) "
                     "(not (= ?r r2))))))",
                     g);
    REQUIRE(q.goal.kind == FormulaKind::Exists);
    const Formula &body = q.goal.kids[0];
    REQUIRE(body.kids[0].kind == FormulaKind::Imply);
    REQUIRE(body.kids[1].kids[0].kind == FormulaKind::Equality);
}

TEST_CASE("conditional and quantified effects parse") {
    Domain d = dom(fixtures::kiln_domain());
    const ActionSchema *sweep = nullptr;
    for (const auto &s : d.schemata)
        if (s.name == "sweep")
            sweep = &s;
    REQUIRE(sweep != nullptr);
    REQUIRE(sweep->effect.kind == EffectKind::And);
    const Effect &fa = sweep->effect.kids[1];
    REQUIRE(fa.kind == EffectKind::Forall);
    REQUIRE(fa.kids[0].kind == EffectKind::When);
    REQUIRE(fa.kids[0].condition == Formula::literal(Atom{"loaded", {"?p"}}));
    REQUIRE(fa.kids[0].kids[0].kind == EffectKind::And);
}

TEST_CASE("round trip: print then reparse is structurally identical") {
    const std::pair<std::string, std::string> cases[] = {
        {fixtures::gripper_domain(), fixtures::gripper_problem(3)},
        {fixtures::blocks_domain(), fixtures::blocks_problem(3, 2)},
        {fixtures::trap_domain(), fixtures::trap_problem()},
        {fixtures::kiln_domain(), fixtures::kiln_problem(4)},
        {fixtures::robot_gripper_domain(), fixtures::robot_gripper_problem(2)},
    };
    for (const auto &[dtext, ptext] : cases) {
        Domain d1 = dom(dtext);
        Problem p1 = prob(ptext, d1);
        Domain d2 = dom(to_pddl(d1));
        Problem p2 = prob(to_pddl(p1), d2);
        REQUIRE(d1 == d2);
        REQUIRE(p1 == p2);
    }
}

TEST_CASE("parsing is deterministic") {
    std::string text = fixtures::blocks_domain();
    REQUIRE(dom(text) == dom(text));
}
