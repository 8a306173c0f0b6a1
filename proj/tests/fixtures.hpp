#ifndef STRIDE_TESTS_FIXTURES_HPP
#define STRIDE_TESTS_FIXTURES_HPP

// PDDL fixture sources shared by the unit tests, the acceptance runner, and
// the domain-file generator tool.  Everything is generated from code so the
// shipped files under domains/ can be checked against these strings.

#include <algorithm>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace fixtures {

// ---------------------------------------------------------------- gripper --
// Two rooms, two grippers, n balls, all balls start in room1 and must reach
// room2.  The (not (= ?from ?to)) guard keeps self-moves out of the ground
// task.

inline std::string gripper_domain() {
    return R"((define (domain gripper)
  (:requirements :strips :typing :equality :negative-preconditions)
  (:types room ball gripper - object)
  (:predicates
    (at-robby ?r - room)
    (at ?b - ball ?r - room)
    (free ?g - gripper)
    (carry ?b - ball ?g - gripper))
  (:action move
    :parameters (?from - room ?to - room)
    :precondition (and (at-robby ?from) (not (= ?from ?to)))
    :effect (and (at-robby ?to) (not (at-robby ?from))))
  (:action pickup
    :parameters (?b - ball ?r - room ?g - gripper)
    :precondition (and (at ?b ?r) (at-robby ?r) (free ?g))
    :effect (and (carry ?b ?g) (not (at ?b ?r)) (not (free ?g))))
  (:action drop
    :parameters (?b - ball ?r - room ?g - gripper)
    :precondition (and (carry ?b ?g) (at-robby ?r))
    :effect (and (at ?b ?r) (free ?g) (not (carry ?b ?g)))))
)";
}

inline std::string gripper_problem(int n) {
    std::ostringstream os;
    os << "(define (problem gripper-" << n << ")\n";
    os << "  (:domain gripper)\n";
    os << "  (:objects room1 room2 - room";
    for (int i = 1; i <= n; ++i)
        os << " ball" << i;
    os << " - ball left right - gripper)\n";
    os << "  (:init (at-robby room1) (free left) (free right)";
    for (int i = 1; i <= n; ++i)
        os << " (at ball" << i << " room1)";
    os << ")\n";
    os << "  (:goal (and";
    for (int i = 1; i <= n; ++i)
        os << " (at ball" << i << " room2)";
    os << ")))\n";
    return os.str();
}

// ----------------------------------------------------------------- blocks --
// Classic four-operator blocksworld plus a recursive derived predicate
// `above` used in goals.

inline std::string blocks_domain() {
    return R"((define (domain blocks)
  (:requirements :adl :derived-predicates)
  (:types block - object)
  (:predicates
    (on ?x - block ?y - block)
    (ontable ?x - block)
    (clear ?x - block)
    (handempty)
    (holding ?x - block)
    (above ?x - block ?y - block))
  (:derived (above ?x - block ?y - block)
    (and (not (= ?x ?y))
         (or (on ?x ?y)
             (exists (?z - block)
               (and (not (= ?z ?x)) (not (= ?z ?y)) (on ?x ?z) (above ?z ?y))))))
  (:action pick-up
    :parameters (?x - block)
    :precondition (and (clear ?x) (ontable ?x) (handempty))
    :effect (and (holding ?x) (not (ontable ?x)) (not (clear ?x)) (not (handempty))))
  (:action put-down
    :parameters (?x - block)
    :precondition (holding ?x)
    :effect (and (ontable ?x) (clear ?x) (handempty) (not (holding ?x))))
  (:action stack
    :parameters (?x - block ?y - block)
    :precondition (and (holding ?x) (clear ?y) (not (= ?x ?y)))
    :effect (and (on ?x ?y) (clear ?x) (handempty) (not (holding ?x)) (not (clear ?y))))
  (:action unstack
    :parameters (?x - block ?y - block)
    :precondition (and (on ?x ?y) (clear ?x) (handempty) (not (= ?x ?y)))
    :effect (and (holding ?x) (clear ?y) (not (on ?x ?y)) (not (clear ?x)) (not (handempty)))))
)";
}

// n blocks named a, b, c, ... all on the table; goal chains `above` over the
// first `chain`+1 blocks: (above a b), (above b c), ...
inline std::string blocks_problem(int n, int chain) {
    std::ostringstream os;
    os << "(define (problem blocks-" << n << ")\n  (:domain blocks)\n  (:objects";
    for (int i = 0; i < n; ++i)
        os << " " << static_cast<char>('a' + i);
    os << " - block)\n  (:init (handempty)";
    for (int i = 0; i < n; ++i)
        os << " (ontable " << static_cast<char>('a' + i) << ") (clear "
           << static_cast<char>('a' + i) << ")";
    os << ")\n  (:goal (and";
    for (int i = 0; i < chain; ++i)
        os << " (above " << static_cast<char>('a' + i) << " " << static_cast<char>('a' + i + 1)
           << ")";
    os << ")))\n";
    return os.str();
}

// ------------------------------------------------------------------- trap --
// Helpful-action pruning walks straight into an unrecoverable pit: from the
// start the heuristically attractive move is drop-in (the blast route looks 3
// actions long under the relaxation), but the single charge cannot clear both
// rubble piles for real.  Only the four-step walk works, and it is never
// helpful at the start, so hill-climbing fails and the fallback search is
// required.

inline std::string trap_domain() {
    return R"((define (domain trap)
  (:requirements :strips)
  (:predicates
    (at-start) (in-pit) (rubble-left) (rubble-right) (charge)
    (at-vault) (mid-one) (mid-two) (mid-three))
  (:action drop-in
    :parameters ()
    :precondition (at-start)
    :effect (and (in-pit) (not (at-start))))
  (:action blast-left
    :parameters ()
    :precondition (and (in-pit) (charge))
    :effect (and (rubble-left) (not (charge))))
  (:action blast-right
    :parameters ()
    :precondition (and (in-pit) (charge))
    :effect (and (rubble-right) (not (charge))))
  (:action crawl-out
    :parameters ()
    :precondition (and (rubble-left) (rubble-right))
    :effect (at-vault))
  (:action walk-one
    :parameters ()
    :precondition (at-start)
    :effect (mid-one))
  (:action walk-two
    :parameters ()
    :precondition (mid-one)
    :effect (mid-two))
  (:action walk-three
    :parameters ()
    :precondition (mid-two)
    :effect (mid-three))
  (:action walk-four
    :parameters ()
    :precondition (mid-three)
    :effect (at-vault)))
)";
}

inline std::string trap_problem() {
    return R"((define (problem trap-1)
  (:domain trap)
  (:init (at-start) (charge))
  (:goal (at-vault)))
)";
}

// ------------------------------------------------------------------- kiln --
// Repeating-structure ADL domain: k identical pieces each need the same
// load / preheat / restock / fire cycle, and every cycle stalls the heuristic
// the same way, so the plateau-escaping sequence learned on the first piece
// re-applies to every later piece.  Sweeping with a loaded piece cracks it
// irrecoverably (dead-end successors), via a quantified conditional effect.
// Declaring restock before fire is deliberate: both can restore fuel at the
// same graph layer, and the id tie-break must pick restock for the plateau to
// span the full three-step cycle prefix.

inline std::string kiln_domain() {
    return R"((define (domain kiln)
  (:requirements :adl)
  (:types piece - object)
  (:predicates
    (raw ?p - piece) (loaded ?p - piece) (warm ?p - piece)
    (fired ?p - piece) (cracked ?p - piece) (fuel) (swept))
  (:action load
    :parameters (?p - piece)
    :precondition (and (raw ?p) (swept))
    :effect (and (loaded ?p) (not (raw ?p)) (not (swept))))
  (:action preheat
    :parameters (?p - piece)
    :precondition (and (loaded ?p) (not (cracked ?p)) (or (fuel) (warm ?p)))
    :effect (and (warm ?p) (not (fuel))))
  (:action restock
    :parameters ()
    :precondition (not (fuel))
    :effect (fuel))
  (:action fire
    :parameters (?p - piece)
    :precondition (and (loaded ?p) (warm ?p))
    :effect (and (fired ?p) (fuel) (not (loaded ?p)) (not (warm ?p))))
  (:action sweep
    :parameters ()
    :precondition (not (swept))
    :effect (and (swept)
                 (forall (?p - piece)
                   (when (loaded ?p) (and (cracked ?p) (not (loaded ?p))))))))
)";
}

inline std::string kiln_problem(int k) {
    std::ostringstream os;
    os << "(define (problem kiln-" << k << ")\n  (:domain kiln)\n  (:objects";
    for (int i = 1; i <= k; ++i)
        os << " p" << (i < 10 ? "0" : "") << i;
    os << " - piece)\n  (:init (swept) (fuel)";
    for (int i = 1; i <= k; ++i)
        os << " (raw p" << (i < 10 ? "0" : "") << i << ")";
    os << ")\n  (:goal (forall (?p - piece) (fired ?p))))\n";
    return os.str();
}

// ---------------------------------------------------------- robot gripper --
// Gripper variant with an explicit robot parameter; exercises macro lifting
// over four distinct constants.

inline std::string robot_gripper_domain() {
    return R"((define (domain robot-gripper)
  (:requirements :strips :typing :equality :negative-preconditions)
  (:types robot ball room - object)
  (:predicates
    (at-robot ?v - robot ?r - room)
    (at ?b - ball ?r - room)
    (holds ?v - robot ?b - ball))
  (:action pickup
    :parameters (?v - robot ?b - ball ?r - room)
    :precondition (and (at-robot ?v ?r) (at ?b ?r))
    :effect (and (holds ?v ?b) (not (at ?b ?r))))
  (:action move
    :parameters (?v - robot ?from - room ?to - room)
    :precondition (and (at-robot ?v ?from) (not (= ?from ?to)))
    :effect (and (at-robot ?v ?to) (not (at-robot ?v ?from))))
  (:action putdown
    :parameters (?v - robot ?b - ball ?r - room)
    :precondition (and (at-robot ?v ?r) (holds ?v ?b))
    :effect (and (at ?b ?r) (not (holds ?v ?b)))))
)";
}

inline std::string robot_gripper_problem(int balls) {
    std::ostringstream os;
    os << "(define (problem robot-gripper-" << balls
       << ")\n  (:domain robot-gripper)\n  (:objects robot1 - robot";
    for (int i = 1; i <= balls; ++i)
        os << " ball" << i;
    os << " - ball room1 room2 - room)\n  (:init (at-robot robot1 room1)";
    for (int i = 1; i <= balls; ++i)
        os << " (at ball" << i << " room1)";
    os << ")\n  (:goal (and";
    for (int i = 1; i <= balls; ++i)
        os << " (at ball" << i << " room2)";
    os << ")))\n";
    return os.str();
}

// ---------------------------------------------------- random STRIPS tasks --
// Small propositional tasks for search-parity checks: a handful of zero-ary
// predicates keeps the reachable space under 2^10 states.

struct RandomTask {
    std::string domain;
    std::string problem;
};

inline RandomTask random_strips_task(unsigned seed) {
    std::mt19937 rng(seed);
    auto pick = [&](int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng);
    };
    int npreds = pick(6, 10);
    int nacts = pick(8, 14);

    auto subset = [&](int count) {
        std::vector<int> all(npreds);
        for (int i = 0; i < npreds; ++i)
            all[i] = i;
        std::shuffle(all.begin(), all.end(), rng);
        all.resize(static_cast<std::size_t>(count));
        std::sort(all.begin(), all.end());
        return all;
    };

    std::ostringstream dom;
    dom << "(define (domain rand-" << seed << ")\n  (:requirements :strips)\n  (:predicates";
    for (int i = 0; i < npreds; ++i)
        dom << " (p" << i << ")";
    dom << ")\n";
    for (int a = 0; a < nacts; ++a) {
        std::vector<int> pre = subset(pick(1, 3));
        std::vector<int> add = subset(pick(1, 2));
        std::vector<int> del = subset(pick(0, 2));
        std::erase_if(del, [&](int p) {
            return std::find(add.begin(), add.end(), p) != add.end();
        });
        dom << "  (:action act" << a << "\n    :parameters ()\n    :precondition (and";
        for (int p : pre)
            dom << " (p" << p << ")";
        dom << ")\n    :effect (and";
        for (int p : add)
            dom << " (p" << p << ")";
        for (int p : del)
            dom << " (not (p" << p << "))";
        dom << "))\n";
    }
    dom << ")\n";

    std::vector<int> init = subset(pick(1, 3));
    std::vector<int> goal = subset(pick(1, 2));
    std::ostringstream prob;
    prob << "(define (problem rand-" << seed << "-p)\n  (:domain rand-" << seed
         << ")\n  (:init";
    for (int p : init)
        prob << " (p" << p << ")";
    prob << ")\n  (:goal (and";
    for (int p : goal)
        prob << " (p" << p << ")";
    prob << ")))\n";
    return {dom.str(), prob.str()};
}

} // namespace fixtures

#endif
