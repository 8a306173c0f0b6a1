#ifndef STRIDE_RPG_HPP
#define STRIDE_RPG_HPP

#include "stride/ground.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <set>
#include <utility>
#include <vector>

namespace stride {

inline constexpr int kInfiniteH = std::numeric_limits<int>::max();

struct HeuristicResult {
    int h = kInfiniteH;
    int goal_layer = -1;      // fact layer where the goal first held (relaxed)
    std::vector<int> helpful; // applicable normal actions worth trying first
};

// Layered relaxed reachability with a negative-fact side: a fact p counts as
// available from its first add, and (not p) counts as available from layer 0
// when p is initially false or from the first level that deletes p.  The
// graph grows through the same satisfaction counters used for applicability:
// each newly available fact decrements the preconditions it appears in, and
// an action schedules the first time its root crosses into satisfied.
class RelaxedGraph {
  public:
    explicit RelaxedGraph(const GroundTask &t) : task_(t) {}

    HeuristicResult evaluate(const State &s) {
        build(s, /*stop_at_goal=*/true);
        HeuristicResult r;
        if (!goal_reached_)
            return r;
        r.goal_layer = goal_layer_;
        r.h = extract(s, &r.helpful);
        return r;
    }

    // Fixpoint mode: every action whose precondition is relaxed-reachable
    // from s.  Used once at startup to shrink the evaluation forests.
    std::vector<int> reachable_actions(const State &s) {
        build(s, /*stop_at_goal=*/false);
        std::vector<int> out;
        for (std::size_t a = 0; a < act_layer_.size(); ++a)
            if (act_layer_[a] != kInfiniteH)
                out.push_back(static_cast<int>(a));
        return out;
    }

  private:
    void build(const State &s, bool stop_at_goal) {
        const SatForest &forest = task_.action_forest;
        const SatForest &goal = task_.goal_forest;
        const std::size_t nprops = task_.props.size();
        const std::size_t nacts = task_.actions.size();

        pos_layer_.assign(nprops, kInfiniteH);
        neg_layer_.assign(nprops, kInfiniteH);
        pos_achiever_.assign(nprops, -1);
        neg_deleter_.assign(nprops, -1);
        act_layer_.assign(nacts, kInfiniteH);
        self_sat_.assign(nacts, 0);
        scheduled_.assign(nacts, 0);
        sched_.clear();

        for (std::size_t p = 0; p < nprops; ++p) {
            if (s.has(static_cast<int>(p)))
                pos_layer_[p] = 0;
            else
                neg_layer_[p] = 0;
        }

        forest.evaluate(s, counters_);
        goal.evaluate(s, goal_counters_);
        goal_reached_ = goal.member_satisfied(0, goal_counters_);
        goal_layer_ = goal_reached_ ? 0 : -1;
        if (goal_reached_ && stop_at_goal)
            return;

        for (std::size_t m = 0; m < forest.member_count(); ++m)
            if (forest.member_satisfied(m, counters_))
                mark_sat(forest.member_id(m), 0);

        std::size_t frontier = 0;
        int layer = 0; // act layer of the slice being expanded
        for (;;) {
            const std::size_t layer_end = sched_.size();
            if (frontier == layer_end)
                break; // nothing scheduled here: fixpoint
            new_pos_.clear();
            new_neg_.clear();
            for (std::size_t i = frontier; i < layer_end; ++i) {
                const GroundAction &a = task_.action(sched_[i]);
                for (int p : a.adds)
                    if (pos_layer_[static_cast<std::size_t>(p)] == kInfiniteH) {
                        pos_layer_[static_cast<std::size_t>(p)] = layer + 1;
                        pos_achiever_[static_cast<std::size_t>(p)] = a.id;
                        new_pos_.push_back(p);
                    }
                for (int p : a.dels)
                    if (neg_layer_[static_cast<std::size_t>(p)] == kInfiniteH) {
                        neg_layer_[static_cast<std::size_t>(p)] = layer + 1;
                        neg_deleter_[static_cast<std::size_t>(p)] = a.id;
                        new_neg_.push_back(p);
                    }
            }
            frontier = layer_end;
            if (new_pos_.empty() && new_neg_.empty())
                break; // no new facts: fixpoint

            newly_.clear();
            auto collect = [&](int m) { newly_.push_back(forest.member_id(m)); };
            auto goal_hit = [&](int) { goal_reached_ = true; };
            for (int p : new_pos_) {
                for (int n : forest.pos_in(p))
                    forest.dec(counters_, n, collect);
                for (int n : goal.pos_in(p))
                    goal.dec(goal_counters_, n, goal_hit);
            }
            for (int p : new_neg_) {
                for (int n : forest.neg_in(p))
                    forest.dec(counters_, n, collect);
                for (int n : goal.neg_in(p))
                    goal.dec(goal_counters_, n, goal_hit);
            }
            ++layer;
            if (goal_reached_ && goal_layer_ < 0) {
                goal_layer_ = layer; // the goal holds over the new fact layer
                if (stop_at_goal)
                    return;
            }
            std::sort(newly_.begin(), newly_.end());
            for (int id : newly_)
                mark_sat(id, layer);
        }
    }

    // An action's effects fire once its own precondition is reachable and,
    // for conditional-effect sub-actions, the owning action has fired too.
    void mark_sat(int id, int layer) {
        self_sat_[static_cast<std::size_t>(id)] = 1;
        const GroundAction &a = task_.action(id);
        if (a.kind == ActionKind::Sub && !scheduled_[static_cast<std::size_t>(a.parent)])
            return;
        schedule(id, layer);
    }

    void schedule(int id, int layer) {
        if (scheduled_[static_cast<std::size_t>(id)])
            return;
        scheduled_[static_cast<std::size_t>(id)] = 1;
        act_layer_[static_cast<std::size_t>(id)] = layer;
        sched_.push_back(id);
        for (int sub : task_.action(id).subs)
            if (self_sat_[static_cast<std::size_t>(sub)])
                schedule(sub, layer);
    }

    // Backward sweep: demanded facts are bucketed at the layer they first
    // appear and resolved deepest-first through their recorded first
    // achievers.  The estimate counts distinct (layer, action) pairs, with
    // derived-fact confirmations free; demanding a fact already handled
    // anywhere is a no-op, so shared substructure is counted once.
    int extract(const State &s, std::vector<int> *helpful) {
        const std::size_t nprops = task_.props.size();
        buckets_.assign(static_cast<std::size_t>(goal_layer_) + 1, {});
        pos_done_.assign(nprops, 0);
        neg_done_.assign(nprops, 0);
        chosen_.clear();

        demand_formula(task_.goal);
        for (int l = goal_layer_; l >= 1; --l) {
            auto &bucket = buckets_[static_cast<std::size_t>(l)];
            for (std::size_t i = 0; i < bucket.size(); ++i) { // demands append below l
                auto [p, positive] = bucket[i];
                int id = positive ? pos_achiever_[static_cast<std::size_t>(p)]
                                  : neg_deleter_[static_cast<std::size_t>(p)];
                assert(id != -1);
                const GroundAction &a = task_.action(id);
                if (a.kind != ActionKind::Confirm)
                    chosen_.insert({l - 1, id});
                demand_formula(a.pre);
                for (int anc = a.parent; anc != -1; anc = task_.action(anc).parent)
                    demand_formula(task_.action(anc).pre);
            }
        }

        if (helpful) {
            helpful->clear();
            add_union_.assign(nprops, 0);
            bool any = false;
            for (const auto &[layer, id] : chosen_) {
                if (layer != 0)
                    continue;
                for (int p : task_.action(id).adds) {
                    add_union_[static_cast<std::size_t>(p)] = 1;
                    any = true;
                }
            }
            if (any)
                for (int id : task_.applicable(s, scratch_))
                    for (int p : task_.action(id).adds)
                        if (add_union_[static_cast<std::size_t>(p)]) {
                            helpful->push_back(id);
                            break;
                        }
        }
        return static_cast<int>(chosen_.size());
    }

    int sat_layer(const Nnf &f) const {
        switch (f.kind) {
        case Nnf::Kind::Pos:
            return pos_layer_[static_cast<std::size_t>(f.prop)];
        case Nnf::Kind::Neg:
            return neg_layer_[static_cast<std::size_t>(f.prop)];
        case Nnf::Kind::And: {
            int worst = 0;
            for (const auto &k : f.kids)
                worst = std::max(worst, sat_layer(k));
            return worst;
        }
        case Nnf::Kind::Or: {
            int best = kInfiniteH;
            for (const auto &k : f.kids)
                best = std::min(best, sat_layer(k));
            return best;
        }
        }
        return kInfiniteH;
    }

    void demand_formula(const Nnf &f) {
        switch (f.kind) {
        case Nnf::Kind::Pos:
            demand(f.prop, true);
            return;
        case Nnf::Kind::Neg:
            demand(f.prop, false);
            return;
        case Nnf::Kind::And:
            for (const auto &k : f.kids)
                demand_formula(k);
            return;
        case Nnf::Kind::Or: {
            const Nnf *pick = nullptr;
            int best = kInfiniteH;
            for (const auto &k : f.kids) {
                int l = sat_layer(k);
                if (l < best) { // strict: ties keep the earliest disjunct
                    best = l;
                    pick = &k;
                }
            }
            if (pick)
                demand_formula(*pick);
            return;
        }
        }
    }

    void demand(int p, bool positive) {
        int l = positive ? pos_layer_[static_cast<std::size_t>(p)]
                         : neg_layer_[static_cast<std::size_t>(p)];
        if (l == 0)
            return; // available from the evaluated state itself
        auto &done = positive ? pos_done_ : neg_done_;
        if (done[static_cast<std::size_t>(p)])
            return;
        done[static_cast<std::size_t>(p)] = 1;
        assert(l <= goal_layer_);
        buckets_[static_cast<std::size_t>(l)].push_back({p, positive});
    }

    const GroundTask &task_;
    std::vector<int> counters_, goal_counters_, scratch_;
    std::vector<int> pos_layer_, neg_layer_, pos_achiever_, neg_deleter_, act_layer_;
    std::vector<char> self_sat_, scheduled_, pos_done_, neg_done_, add_union_;
    std::vector<int> sched_, new_pos_, new_neg_, newly_;
    std::vector<std::vector<std::pair<int, bool>>> buckets_;
    std::set<std::pair<int, int>> chosen_;
    bool goal_reached_ = false;
    int goal_layer_ = -1;
};

// Startup pass: restrict the evaluation forests to the actions that are
// relaxed-reachable from the initial state.  Sound because real reachability
// implies relaxed reachability from the same start.  Returns the kept ids.
inline std::vector<int> bootstrap_reachable(GroundTask &t) {
    RelaxedGraph g(t);
    std::vector<int> ids = g.reachable_actions(t.init);
    t.rebuild_forests(ids);
    return ids;
}

} // namespace stride

#endif
