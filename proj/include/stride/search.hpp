#ifndef STRIDE_SEARCH_HPP
#define STRIDE_SEARCH_HPP

#include "stride/ground.hpp"
#include "stride/macro.hpp"
#include "stride/rpg.hpp"
#include "stride/trace.hpp"

#include <chrono>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace stride {

enum class PlateauMode { LeastBad, Breadth };
enum class FallbackMode { Greedy, PlainBfs };
enum class SearchStatus { Solved, Unsolvable, Budget };

struct SearchOptions {
    bool use_macros = true;
    PlateauMode plateau = PlateauMode::LeastBad;
    FallbackMode fallback = FallbackMode::Greedy;
    std::chrono::steady_clock::time_point deadline =
        std::chrono::steady_clock::time_point::max();
    long max_evaluated = 20'000'000; // internal guard on heuristic evaluations
};

struct SearchResult {
    SearchStatus status = SearchStatus::Unsolvable;
    std::vector<int> plan; // ground action ids, in order
    Trace trace;
    MacroLibrary macros;
    long evaluated = 0;
    bool ehc_failed = false;
    int plateau_episodes = 0;    // hill-climbing stalls entered
    int multi_node_episodes = 0; // stalls that expanded at least one node
    int macro_exits = 0;         // stalls escaped by a stored macro
};

namespace detail {

struct BudgetExceeded {};

// Hill-climbing over helpful successors with plateau episodes: a stall first
// tries the stored macros at its root, then runs a bounded best-first (or
// breadth-first) search over helpful successors until some state beats the
// root's estimate; the escape path is lifted into a new macro.  If every
// episode route dies, the whole climb is abandoned and a best-first search
// with a greedy dive rule restarts from the initial state.
class Searcher {
  public:
    Searcher(GroundTask &t, const SearchOptions &opts) : t_(t), g_(t), opts_(opts) {}

    SearchResult run(bool with_ehc) {
        try {
            if (with_ehc)
                ehc();
            else
                fallback(std::nullopt);
        } catch (const BudgetExceeded &) {
            res_.status = SearchStatus::Budget;
        }
        res_.evaluated = evaluated_;
        res_.macros = std::move(lib_);
        return std::move(res_);
    }

  private:
    struct Node {
        State s;
        int h = 0;
        std::vector<int> path; // actions from the episode root
        std::vector<int> helpful;
    };

    enum class Episode { Advanced, Solved, Exhausted };

    void tick() {
        if (std::chrono::steady_clock::now() >= opts_.deadline)
            throw BudgetExceeded{};
    }

    HeuristicResult eval(const State &s) {
        if (evaluated_ >= opts_.max_evaluated)
            throw BudgetExceeded{};
        ++evaluated_;
        return g_.evaluate(s);
    }

    void row(const char *phase, int h) { res_.trace.add(phase, h, evaluated_); }

    void solved(std::vector<int> plan) {
        res_.status = SearchStatus::Solved;
        res_.plan = std::move(plan);
    }

    void ehc() {
        HeuristicResult r0 = eval(t_.init);
        init_h_ = r0.h;
        row("EHC", r0.h);
        if (t_.goal_satisfied(t_.init)) {
            solved({});
            return;
        }
        if (r0.h == kInfiniteH) {
            // the relaxation over-approximates reachability, so an infinite
            // initial estimate proves the task unsolvable
            res_.ehc_failed = true;
            row("EHC-FAIL", r0.h);
            res_.status = SearchStatus::Unsolvable;
            return;
        }
        State cur = t_.init;
        int cur_h = r0.h;
        std::vector<int> cur_helpful = std::move(r0.helpful);
        while (true) {
            tick();
            std::vector<Node> seeds;
            bool advanced = false;
            for (int a : cur_helpful) {
                State child = t_.apply(cur, a, scratch_);
                if (t_.goal_satisfied(child)) {
                    plan_.push_back(a);
                    solved(plan_);
                    return;
                }
                HeuristicResult rc = eval(child);
                if (rc.h == kInfiniteH)
                    continue;
                if (rc.h < cur_h) {
                    plan_.push_back(a);
                    cur = std::move(child);
                    cur_h = rc.h;
                    cur_helpful = std::move(rc.helpful);
                    row("EHC", cur_h);
                    advanced = true;
                    break;
                }
                seeds.push_back({std::move(child), rc.h, {a}, std::move(rc.helpful)});
            }
            if (advanced)
                continue;
            ++res_.plateau_episodes;
            switch (plateau(cur, cur_h, cur_helpful, seeds)) {
            case Episode::Advanced:
                continue;
            case Episode::Solved:
                return;
            case Episode::Exhausted:
                res_.ehc_failed = true;
                row("EHC-FAIL", cur_h);
                fallback(init_h_);
                return;
            }
        }
    }

    Episode plateau(State &cur, int &cur_h, std::vector<int> &cur_helpful,
                    std::vector<Node> &seeds) {
        const int root_h = cur_h;

        if (opts_.use_macros && !lib_.empty()) {
            for (auto &m : lib_.macros()) {
                std::vector<int> jump_path, jump_helpful;
                State jump_state;
                int jump_h = -1;
                bool found = false, jump_goal = false;
                for_each_instantiation(
                    m, t_, cur, cur_helpful,
                    [&](const std::vector<int> &acts, const State &end) {
                        tick();
                        if (t_.goal_satisfied(end)) {
                            found = jump_goal = true;
                            jump_path = acts;
                            jump_h = 0;
                            return true;
                        }
                        HeuristicResult re = eval(end);
                        if (re.h < root_h) {
                            found = true;
                            jump_path = acts;
                            jump_state = end;
                            jump_h = re.h;
                            jump_helpful = std::move(re.helpful);
                            return true;
                        }
                        return false;
                    });
                if (found) {
                    ++m.uses;
                    ++res_.macro_exits;
                    for (int a : jump_path)
                        plan_.push_back(a);
                    row("MACRO-EXIT", jump_h);
                    if (jump_goal) {
                        solved(plan_);
                        return Episode::Solved;
                    }
                    cur = std::move(jump_state);
                    cur_h = jump_h;
                    cur_helpful = std::move(jump_helpful);
                    return Episode::Advanced;
                }
            }
        }

        std::set<std::vector<bool>> visited;
        visited.insert(cur.base);
        std::multimap<std::pair<int, long>, Node> ordered;
        std::deque<Node> fifo;
        long seq = 0;
        auto push = [&](Node n) {
            if (opts_.plateau == PlateauMode::LeastBad)
                ordered.emplace(std::make_pair(n.h, seq++), std::move(n));
            else
                fifo.push_back(std::move(n));
        };
        for (auto &sd : seeds)
            if (visited.insert(sd.s.base).second)
                push(std::move(sd));
        int pops = 0;
        auto close_episode = [&] {
            if (pops >= 1)
                ++res_.multi_node_episodes;
        };
        while (!ordered.empty() || !fifo.empty()) {
            tick();
            Node node;
            if (opts_.plateau == PlateauMode::LeastBad) {
                node = std::move(ordered.begin()->second);
                ordered.erase(ordered.begin());
            } else {
                node = std::move(fifo.front());
                fifo.pop_front();
            }
            ++pops;
            row("PLATEAU", node.h);
            for (int a : node.helpful) {
                State child = t_.apply(node.s, a, scratch_);
                if (t_.goal_satisfied(child)) {
                    for (int x : node.path)
                        plan_.push_back(x);
                    plan_.push_back(a);
                    solved(plan_);
                    close_episode();
                    return Episode::Solved;
                }
                if (!visited.insert(child.base).second)
                    continue;
                HeuristicResult rc = eval(child);
                if (rc.h == kInfiniteH)
                    continue;
                if (rc.h < root_h) {
                    std::vector<int> path = node.path;
                    path.push_back(a);
                    if (opts_.use_macros)
                        lib_.learn(t_, path);
                    for (int x : path)
                        plan_.push_back(x);
                    cur = std::move(child);
                    cur_h = rc.h;
                    cur_helpful = std::move(rc.helpful);
                    row("EHC", cur_h);
                    close_episode();
                    return Episode::Advanced;
                }
                Node nc{std::move(child), rc.h, node.path, std::move(rc.helpful)};
                nc.path.push_back(a);
                push(std::move(nc));
            }
        }
        close_episode();
        return Episode::Exhausted;
    }

    // Best-first search from the initial state over all applicable actions.
    // In greedy mode, a child strictly better than its parent is expanded
    // next (the parent is parked to resume its remaining successors later);
    // in plain mode every node is fully expanded into the ordered open list.
    void fallback(std::optional<int> known_h) {
        if (t_.goal_satisfied(t_.init)) {
            solved({});
            return;
        }
        int h0;
        if (known_h) {
            h0 = *known_h;
        } else {
            HeuristicResult r = eval(t_.init);
            h0 = r.h;
        }
        if (h0 == kInfiniteH) {
            res_.status = SearchStatus::Unsolvable;
            return;
        }
        struct Entry {
            State s;
            int h = 0;
            std::size_t counter = 0; // next successor index to try
            std::vector<int> plan;
        };
        const bool greedy = opts_.fallback == FallbackMode::Greedy;
        std::set<std::vector<bool>> seen;
        seen.insert(t_.init.base);
        std::vector<Entry> stack;
        std::multimap<std::pair<int, long>, Entry> ordered;
        long seq = 0;
        if (greedy)
            stack.push_back({t_.init, h0, 0, {}});
        else
            ordered.emplace(std::make_pair(h0, seq++), Entry{t_.init, h0, 0, {}});
        while (!stack.empty() || !ordered.empty()) {
            tick();
            Entry e;
            if (!stack.empty()) {
                e = std::move(stack.back());
                stack.pop_back();
            } else {
                e = std::move(ordered.begin()->second);
                ordered.erase(ordered.begin());
            }
            row("GBFS", e.h);
            std::vector<int> apps = t_.applicable(e.s, scratch_);
            bool dived = false;
            for (std::size_t i = e.counter; i < apps.size(); ++i) {
                int a = apps[i];
                State child = t_.apply(e.s, a, scratch_);
                if (t_.goal_satisfied(child)) {
                    std::vector<int> plan = e.plan;
                    plan.push_back(a);
                    solved(std::move(plan));
                    return;
                }
                if (!seen.insert(child.base).second)
                    continue;
                HeuristicResult rc = eval(child);
                if (rc.h == kInfiniteH)
                    continue;
                Entry ce{std::move(child), rc.h, 0, e.plan};
                ce.plan.push_back(a);
                if (greedy && rc.h < e.h) {
                    Entry resume = std::move(e);
                    resume.counter = i + 1;
                    stack.push_back(std::move(resume));
                    stack.push_back(std::move(ce));
                    dived = true;
                    break;
                }
                ordered.emplace(std::make_pair(rc.h, seq++), std::move(ce));
            }
            (void)dived;
        }
        res_.status = SearchStatus::Unsolvable;
    }

    GroundTask &t_;
    RelaxedGraph g_;
    SearchOptions opts_;
    SearchResult res_;
    MacroLibrary lib_;
    long evaluated_ = 0;
    int init_h_ = 0;
    std::vector<int> scratch_;
    std::vector<int> plan_;
};

} // namespace detail

// Full pipeline: enforced hill-climbing first, best-first fallback on failure.
inline SearchResult solve(GroundTask &t, const SearchOptions &opts = {}) {
    return detail::Searcher(t, opts).run(true);
}

// The fallback search alone, from the initial state.
inline SearchResult fallback_search(GroundTask &t, const SearchOptions &opts = {}) {
    return detail::Searcher(t, opts).run(false);
}

} // namespace stride

#endif
