#ifndef STRIDE_GROUND_HPP
#define STRIDE_GROUND_HPP

#include "stride/nnf.hpp"
#include "stride/pddl/ast.hpp"
#include "stride/state.hpp"

#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace stride {

struct GroundError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Domain constants followed by problem objects, in declaration order; type
// membership is subtype-closed and preserves that order.
class ObjectTable {
  public:
    ObjectTable() = default;
    ObjectTable(const pddl::Domain &d, const pddl::Problem &p) {
        for (const auto &c : d.constants)
            entries_.emplace_back(c.name, c.type);
        for (const auto &o : p.objects)
            entries_.emplace_back(o.name, o.type);
        std::vector<std::string> types{"object"};
        for (const auto &[name, parent] : d.types)
            types.push_back(name);
        for (const auto &t : types) {
            auto &v = of_type_[t];
            for (const auto &[name, ty] : entries_)
                if (d.is_subtype(ty, t))
                    v.push_back(name);
        }
    }

    const std::vector<std::string> &of_type(const std::string &type) const {
        static const std::vector<std::string> empty;
        auto it = of_type_.find(type);
        return it == of_type_.end() ? empty : it->second;
    }

    const std::string *type_of(const std::string &name) const {
        for (const auto &[n, t] : entries_)
            if (n == name)
                return &t;
        return nullptr;
    }

    std::size_t size() const { return entries_.size(); }

  private:
    std::vector<std::pair<std::string, std::string>> entries_;
    std::map<std::string, std::vector<std::string>> of_type_;
};

// Dense ids for ground propositions.  Static predicates (never derived,
// never in any effect) are folded away at ground time and never interned.
class PropTable {
  public:
    struct Info {
        pddl::Atom atom;
        bool is_derived = false;
        bool in_init = false;
    };

    int intern(const pddl::Atom &a, bool is_derived) {
        auto it = ids_.find(a);
        if (it != ids_.end())
            return it->second;
        int id = static_cast<int>(infos_.size());
        ids_.emplace(a, id);
        infos_.push_back({a, is_derived, false});
        return id;
    }

    int find(const pddl::Atom &a) const {
        auto it = ids_.find(a);
        return it == ids_.end() ? -1 : it->second;
    }

    const Info &info(int p) const { return infos_[static_cast<std::size_t>(p)]; }
    std::size_t size() const { return infos_.size(); }
    void mark_init(int p) { infos_[static_cast<std::size_t>(p)].in_init = true; }

    std::string name(int p) const {
        const Info &i = info(p);
        std::string s = "(" + i.atom.pred;
        for (const auto &a : i.atom.args)
            s += " " + a;
        return s + ")";
    }

  private:
    std::map<pddl::Atom, int> ids_;
    std::vector<Info> infos_;
};

enum class ActionKind { Normal, Sub, Confirm };

struct GroundAction {
    int id = -1;
    ActionKind kind = ActionKind::Normal;
    std::string schema;
    std::vector<std::string> args;
    Nnf pre;
    std::vector<int> adds, dels; // sorted; dels disjoint from adds
    std::vector<int> subs;       // conditional-effect sub-action ids
    int parent = -1;

    std::string name() const {
        std::string s = "(" + schema;
        for (const auto &a : args)
            s += " " + a;
        return s + ")";
    }
};

struct GroundOptions {
    std::size_t max_ground_actions = 5'000'000;
};

struct GroundTask {
    pddl::Domain domain;
    pddl::Problem problem;
    ObjectTable objects;
    PropTable props;
    std::vector<GroundAction> actions;
    std::vector<int> normal_ids, confirm_ids;
    std::vector<int> derived_props;
    Nnf goal;
    State init;
    std::map<std::pair<std::string, std::vector<std::string>>, int> instance_ids;
    SatForest action_forest;  // every action, member order = id order
    SatForest confirm_forest; // confirm actions only
    SatForest goal_forest;    // single member

    const GroundAction &action(int id) const { return actions[static_cast<std::size_t>(id)]; }

    int find_instance(const std::string &schema, const std::vector<std::string> &args) const {
        auto it = instance_ids.find({schema, args});
        return it == instance_ids.end() ? -1 : it->second;
    }

    // Recomputes s.derived as the least fixpoint of the confirm actions over
    // s.base.  Bodies never negate derived facts, so once the base facts are
    // processed the counters only ever move toward satisfaction.
    void close(State &s, std::vector<int> &counters) const {
        s.derived.assign(props.size(), false);
        if (confirm_forest.member_count() == 0)
            return;
        confirm_forest.reset(counters);
        auto noop = [](int) {};
        for (std::size_t p = 0; p < props.size(); ++p) {
            if (!s.base[p])
                continue;
            for (int n : confirm_forest.neg_in(static_cast<int>(p)))
                confirm_forest.inc(counters, n, noop);
            for (int n : confirm_forest.pos_in(static_cast<int>(p)))
                confirm_forest.dec(counters, n, noop);
        }
        std::vector<int> work;
        for (std::size_t m = 0; m < confirm_forest.member_count(); ++m)
            if (confirm_forest.member_satisfied(m, counters))
                work.push_back(static_cast<int>(m));
        for (std::size_t i = 0; i < work.size(); ++i) {
            const GroundAction &c = action(confirm_forest.member_id(work[i]));
            std::size_t head = static_cast<std::size_t>(c.adds[0]);
            if (s.derived[head])
                continue;
            s.derived[head] = true;
            for (int n : confirm_forest.pos_in(c.adds[0]))
                confirm_forest.dec(counters, n, [&](int m) { work.push_back(m); });
        }
    }

    State make_init_state(std::vector<int> &counters) const {
        State s;
        s.base.assign(props.size(), false);
        for (std::size_t p = 0; p < props.size(); ++p)
            if (props.info(static_cast<int>(p)).in_init)
                s.base[p] = true;
        close(s, counters);
        return s;
    }

    // Ids of the normal actions whose preconditions hold in s, ascending.
    std::vector<int> applicable(const State &s, std::vector<int> &counters) const {
        action_forest.evaluate(s, counters);
        std::vector<int> out;
        for (std::size_t m = 0; m < action_forest.member_count(); ++m) {
            int id = action_forest.member_id(m);
            if (action(id).kind == ActionKind::Normal &&
                action_forest.member_satisfied(m, counters))
                out.push_back(id);
        }
        return out;
    }

    // Classical transition: delete effects of the action and of every
    // sub-action whose condition holds in the pre-state, then add effects,
    // then derived-closure.  Sub-action conditions are evaluated against the
    // pre-transition state, recursively.
    State apply(const State &s, int act, std::vector<int> &counters) const {
        std::vector<int> adds, dels;
        gather_effects(s, act, adds, dels);
        State out;
        out.base = s.base;
        for (int d : dels)
            out.base[static_cast<std::size_t>(d)] = false;
        for (int a : adds)
            out.base[static_cast<std::size_t>(a)] = true;
        close(out, counters);
        return out;
    }

    void gather_effects(const State &s, int act, std::vector<int> &adds,
                        std::vector<int> &dels) const {
        const GroundAction &a = action(act);
        adds.insert(adds.end(), a.adds.begin(), a.adds.end());
        dels.insert(dels.end(), a.dels.begin(), a.dels.end());
        for (int sub : a.subs)
            if (holds(action(sub).pre, s))
                gather_effects(s, sub, adds, dels);
    }

    bool goal_satisfied(const State &s) const { return holds(goal, s); }

    // Restricts the evaluation forests to the given action ids (used after
    // the startup reachability pass).  The actions themselves stay in place;
    // excluded members simply never report applicable again.
    void rebuild_forests(const std::vector<int> &reachable_ids) {
        std::vector<std::pair<int, const Nnf *>> all, confirms;
        for (int id : reachable_ids) {
            all.emplace_back(id, &action(id).pre);
            if (action(id).kind == ActionKind::Confirm)
                confirms.emplace_back(id, &action(id).pre);
        }
        action_forest.build(props.size(), all);
        confirm_forest.build(props.size(), confirms);
    }
};

namespace detail {

inline void collect_effect_preds(const pddl::Effect &e, std::set<std::string> &out) {
    if (e.kind == pddl::EffectKind::Literal)
        out.insert(e.atom.pred);
    for (const auto &k : e.kids)
        collect_effect_preds(k, out);
}

} // namespace detail

inline GroundTask ground(const pddl::Domain &dom, const pddl::Problem &prob,
                         const GroundOptions &opts = {}) {
    GroundTask t;
    t.domain = dom;
    t.problem = prob;
    t.objects = ObjectTable(dom, prob);

    const std::set<pddl::Atom> init_atoms(prob.init.begin(), prob.init.end());

    std::set<std::string> effect_preds;
    for (const auto &s : dom.schemata)
        detail::collect_effect_preds(s.effect, effect_preds);
    auto is_static_pred = [&](const std::string &pred) {
        return !dom.is_derived_predicate(pred) && effect_preds.count(pred) == 0;
    };

    LeafResolver resolver = [&](const pddl::Atom &a) -> LeafResolution {
        if (a.pred == "=")
            return a.args[0] == a.args[1] ? LeafResolution::yes() : LeafResolution::no();
        if (is_static_pred(a.pred))
            return init_atoms.count(a) ? LeafResolution::yes() : LeafResolution::no();
        return LeafResolution::dynamic(t.props.intern(a, dom.is_derived_predicate(a.pred)));
    };
    ObjectsOfType objects_of = [&](const std::string &ty) -> const std::vector<std::string> & {
        return t.objects.of_type(ty);
    };
    auto ground_formula = [&](const pddl::Formula &f,
                              const std::map<std::string, std::string> &env) {
        return to_nnf(enumerate_quantifiers(substitute(f, env), objects_of), resolver);
    };

    // Iterate all type-consistent bindings of `vars`, leftmost variable
    // varying slowest; objects in declaration order.
    auto for_each_binding = [&](const std::vector<pddl::TypedVar> &vars, auto &&fn) {
        std::vector<std::string> args(vars.size());
        if (vars.empty()) {
            fn(args);
            return;
        }
        std::vector<const std::vector<std::string> *> doms;
        doms.reserve(vars.size());
        for (const auto &v : vars) {
            doms.push_back(&t.objects.of_type(v.type));
            if (doms.back()->empty())
                return;
        }
        std::vector<std::size_t> idx(vars.size(), 0);
        for (;;) {
            for (std::size_t i = 0; i < vars.size(); ++i)
                args[i] = (*doms[i])[idx[i]];
            fn(args);
            std::size_t i = vars.size();
            for (;;) {
                --i;
                if (++idx[i] < doms[i]->size())
                    break;
                idx[i] = 0;
                if (i == 0)
                    return;
            }
        }
    };

    struct Pending {
        Nnf pre;
        std::vector<int> adds, dels;
        std::vector<Pending> subs;
        bool empty() const { return adds.empty() && dels.empty() && subs.empty(); }
    };

    std::function<void(const pddl::Effect &, const std::map<std::string, std::string> &,
                       Pending &)>
        ground_effect = [&](const pddl::Effect &e, const std::map<std::string, std::string> &env,
                            Pending &out) {
            switch (e.kind) {
            case pddl::EffectKind::Literal: {
                pddl::Atom a = e.atom;
                for (auto &arg : a.args)
                    if (auto it = env.find(arg); it != env.end())
                        arg = it->second;
                int p = t.props.intern(a, false);
                (e.negated ? out.dels : out.adds).push_back(p);
                break;
            }
            case pddl::EffectKind::And:
                for (const auto &k : e.kids)
                    ground_effect(k, env, out);
                break;
            case pddl::EffectKind::Forall:
                for_each_binding(e.vars, [&](const std::vector<std::string> &args) {
                    std::map<std::string, std::string> inner = env;
                    for (std::size_t i = 0; i < e.vars.size(); ++i)
                        inner[e.vars[i].name] = args[i];
                    ground_effect(e.kids[0], inner, out);
                });
                break;
            case pddl::EffectKind::When: {
                Nnf cond = ground_formula(e.condition, env);
                if (cond.is_false())
                    break;
                if (cond.is_true()) {
                    ground_effect(e.kids[0], env, out);
                    break;
                }
                Pending sub;
                sub.pre = std::move(cond);
                ground_effect(e.kids[0], env, sub);
                if (!sub.empty())
                    out.subs.push_back(std::move(sub));
                break;
            }
            }
        };

    auto normalize = [](std::vector<int> &adds, std::vector<int> &dels) {
        std::sort(adds.begin(), adds.end());
        adds.erase(std::unique(adds.begin(), adds.end()), adds.end());
        std::sort(dels.begin(), dels.end());
        dels.erase(std::unique(dels.begin(), dels.end()), dels.end());
        std::erase_if(dels, [&](int d) {
            return std::binary_search(adds.begin(), adds.end(), d);
        });
    };

    std::function<int(Pending &&, ActionKind, const std::string &,
                      const std::vector<std::string> &, int)>
        emit = [&](Pending &&p, ActionKind kind, const std::string &schema,
                   const std::vector<std::string> &args, int parent) -> int {
        normalize(p.adds, p.dels);
        int id = static_cast<int>(t.actions.size());
        GroundAction a;
        a.id = id;
        a.kind = kind;
        a.schema = schema;
        a.args = args;
        a.pre = std::move(p.pre);
        a.adds = std::move(p.adds);
        a.dels = std::move(p.dels);
        a.parent = parent;
        t.actions.push_back(std::move(a));
        if (t.actions.size() > opts.max_ground_actions)
            throw GroundError("ground action cap exceeded (" +
                              std::to_string(t.actions.size()) + " > " +
                              std::to_string(opts.max_ground_actions) + ")");
        for (auto &sub : p.subs) {
            int child = emit(std::move(sub), ActionKind::Sub, schema, args, id);
            t.actions[static_cast<std::size_t>(id)].subs.push_back(child);
        }
        return id;
    };

    for (const auto &schema : dom.schemata) {
        for_each_binding(schema.params, [&](const std::vector<std::string> &args) {
            std::map<std::string, std::string> env;
            for (std::size_t i = 0; i < schema.params.size(); ++i)
                env[schema.params[i].name] = args[i];
            Nnf pre = ground_formula(schema.precondition, env);
            if (pre.is_false())
                return;
            Pending root;
            root.pre = std::move(pre);
            ground_effect(schema.effect, env, root);
            int id = emit(std::move(root), ActionKind::Normal, schema.name, args, -1);
            t.normal_ids.push_back(id);
            t.instance_ids.emplace(std::make_pair(schema.name, args), id);
        });
    }

    for (const auto &rule : dom.derivations) {
        for_each_binding(rule.params, [&](const std::vector<std::string> &args) {
            std::map<std::string, std::string> env;
            for (std::size_t i = 0; i < rule.params.size(); ++i)
                env[rule.params[i].name] = args[i];
            Nnf body = ground_formula(rule.body, env);
            if (body.is_false())
                return;
            Pending p;
            p.pre = std::move(body);
            p.adds.push_back(t.props.intern({rule.pred, args}, true));
            int id = emit(std::move(p), ActionKind::Confirm, "confirm-" + rule.pred, args, -1);
            t.confirm_ids.push_back(id);
        });
    }

    t.goal = ground_formula(prob.goal, {});

    for (const auto &a : prob.init)
        if (!is_static_pred(a.pred))
            t.props.mark_init(t.props.intern(a, false));

    for (std::size_t p = 0; p < t.props.size(); ++p)
        if (t.props.info(static_cast<int>(p)).is_derived)
            t.derived_props.push_back(static_cast<int>(p));

    // Derived facts are reasserted by closure after every step, so every
    // normal action deletes them all; this keeps the relaxed graph's
    // negative spike honest about derived facts becoming false.
    if (!t.derived_props.empty()) {
        for (auto &a : t.actions) {
            if (a.kind != ActionKind::Normal)
                continue;
            a.dels.insert(a.dels.end(), t.derived_props.begin(), t.derived_props.end());
            std::sort(a.dels.begin(), a.dels.end());
            a.dels.erase(std::unique(a.dels.begin(), a.dels.end()), a.dels.end());
        }
    }

    std::vector<std::pair<int, const Nnf *>> all, confirms;
    for (const auto &a : t.actions) {
        all.emplace_back(a.id, &a.pre);
        if (a.kind == ActionKind::Confirm)
            confirms.emplace_back(a.id, &a.pre);
    }
    t.action_forest.build(t.props.size(), all);
    t.confirm_forest.build(t.props.size(), confirms);
    t.goal_forest.build(t.props.size(), {{0, &t.goal}});

    std::vector<int> counters;
    t.init = t.make_init_state(counters);
    return t;
}

} // namespace stride

#endif
