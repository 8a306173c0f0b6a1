#ifndef STRIDE_STATE_HPP
#define STRIDE_STATE_HPP

#include "stride/nnf.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace stride {

// World state over the dense proposition universe.  `base` holds ordinary
// facts; `derived` is the closure of the derivation rules over base and is
// recomputed after every transition, so hashing and equality use base only.
struct State {
    std::vector<bool> base;
    std::vector<bool> derived;

    bool has(int p) const {
        return base[static_cast<std::size_t>(p)] || derived[static_cast<std::size_t>(p)];
    }
};

inline bool holds(const Nnf &f, const State &s) {
    switch (f.kind) {
    case Nnf::Kind::Pos:
        return s.has(f.prop);
    case Nnf::Kind::Neg:
        return !s.has(f.prop);
    case Nnf::Kind::And:
        for (const auto &k : f.kids)
            if (!holds(k, s))
                return false;
        return true;
    case Nnf::Kind::Or:
        for (const auto &k : f.kids)
            if (holds(k, s))
                return true;
        return false;
    }
    return false;
}

// Counter-annotated and/or forest over the precondition formulas of a set of
// members (ground actions, or the goal).  A node is satisfied iff its counter
// is <= 0.  Reset values are precomputed once: an and-node starts at its
// child count, an or-node at 1, and every negative leaf pre-decrements its
// parent ("assumed true"), with decrements propagated upward whenever a node
// crosses the satisfied threshold.  Evaluation then processes the facts
// present in a state: each fact first increments the parents of its negative
// leaves, then decrements the parents of its positive leaves, again
// propagating only on threshold crossings, so multiple true children of an
// or-node cannot double-count.
class SatForest {
  public:
    void build(std::size_t nprops, const std::vector<std::pair<int, const Nnf *>> &members) {
        nodes_.clear();
        reset_template_.clear();
        root_member_.clear();
        member_root_.clear();
        member_ids_.clear();
        pos_in_.assign(nprops, {});
        neg_in_.assign(nprops, {});
        std::vector<int> neg_occurrences;
        for (std::size_t m = 0; m < members.size(); ++m) {
            const auto &[id, pre] = members[m];
            int root = add_node(-1);
            if (pre->kind == Nnf::Kind::Pos || pre->kind == Nnf::Kind::Neg) {
                reset_template_[static_cast<std::size_t>(root)] = 1;
                add_leaf(*pre, root, neg_occurrences);
            } else {
                fill_node(*pre, root, neg_occurrences);
            }
            root_member_[static_cast<std::size_t>(root)] = static_cast<int>(m);
            member_root_.push_back(root);
            member_ids_.push_back(id);
        }
        for (int n : neg_occurrences)
            dec(reset_template_, n, [](int) {});
    }

    std::size_t member_count() const { return member_ids_.size(); }
    int member_id(std::size_t m) const { return member_ids_[m]; }
    int member_root(std::size_t m) const { return member_root_[m]; }
    int root_member(int node) const { return root_member_[static_cast<std::size_t>(node)]; }
    int parent(int node) const { return nodes_[static_cast<std::size_t>(node)].parent; }
    std::size_t node_count() const { return nodes_.size(); }
    const std::vector<int> &reset_template() const { return reset_template_; }
    const std::vector<int> &pos_in(int p) const { return pos_in_[static_cast<std::size_t>(p)]; }
    const std::vector<int> &neg_in(int p) const { return neg_in_[static_cast<std::size_t>(p)]; }

    void reset(std::vector<int> &counters) const { counters = reset_template_; }

    // Decrement with upward crossing propagation; fires the callback with the
    // member index when a member's root becomes satisfied.
    template <class OnSat>
    void dec(std::vector<int> &counters, int node, OnSat &&on_satisfied) const {
        while (node >= 0) {
            int old = counters[static_cast<std::size_t>(node)]--;
            if (!(old > 0 && old - 1 <= 0))
                return;
            int m = root_member_[static_cast<std::size_t>(node)];
            if (m >= 0)
                on_satisfied(m);
            node = nodes_[static_cast<std::size_t>(node)].parent;
        }
    }

    // Increment with upward crossing propagation (a satisfied node becoming
    // unsatisfied); fires when a member's root ceases to be satisfied.
    template <class OnUnsat>
    void inc(std::vector<int> &counters, int node, OnUnsat &&on_unsatisfied) const {
        while (node >= 0) {
            int old = counters[static_cast<std::size_t>(node)]++;
            if (!(old <= 0 && old + 1 > 0))
                return;
            int m = root_member_[static_cast<std::size_t>(node)];
            if (m >= 0)
                on_unsatisfied(m);
            node = nodes_[static_cast<std::size_t>(node)].parent;
        }
    }

    // Full evaluation against a state: reset, then the two per-fact passes.
    void evaluate(const State &s, std::vector<int> &counters) const {
        reset(counters);
        auto noop = [](int) {};
        for (std::size_t p = 0; p < pos_in_.size(); ++p) {
            if (!s.has(static_cast<int>(p)))
                continue;
            for (int n : neg_in_[p])
                inc(counters, n, noop);
            for (int n : pos_in_[p])
                dec(counters, n, noop);
        }
    }

    bool member_satisfied(std::size_t m, const std::vector<int> &counters) const {
        return counters[static_cast<std::size_t>(member_root_[m])] <= 0;
    }

  private:
    struct Node {
        int parent = -1;
    };

    int add_node(int parent) {
        nodes_.push_back({parent});
        reset_template_.push_back(0);
        root_member_.push_back(-1);
        return static_cast<int>(nodes_.size()) - 1;
    }

    void add_leaf(const Nnf &leaf, int parent, std::vector<int> &neg_occurrences) {
        if (leaf.kind == Nnf::Kind::Pos) {
            pos_in_[static_cast<std::size_t>(leaf.prop)].push_back(parent);
        } else {
            neg_in_[static_cast<std::size_t>(leaf.prop)].push_back(parent);
            neg_occurrences.push_back(parent);
        }
    }

    // `node` is already allocated for connective `f`; fills reset + children.
    void fill_node(const Nnf &f, int node, std::vector<int> &neg_occurrences) {
        bool is_and = f.kind == Nnf::Kind::And;
        int countable = 0;
        bool or_trivially_true = false;
        for (const auto &k : f.kids) {
            if (k.is_true()) {
                if (!is_and)
                    or_trivially_true = true;
                continue;
            }
            ++countable;
            if (k.kind == Nnf::Kind::Pos || k.kind == Nnf::Kind::Neg) {
                add_leaf(k, node, neg_occurrences);
            } else {
                int child = add_node(node);
                fill_node(k, child, neg_occurrences);
            }
        }
        int reset;
        if (is_and)
            reset = countable;
        else
            reset = or_trivially_true ? 0 : 1;
        reset_template_[static_cast<std::size_t>(node)] = reset;
    }

    std::vector<Node> nodes_;
    std::vector<int> reset_template_;
    std::vector<int> root_member_; // node -> member index (roots only)
    std::vector<int> member_root_; // member index -> node
    std::vector<int> member_ids_;  // member index -> caller id
    std::vector<std::vector<int>> pos_in_, neg_in_;
};

} // namespace stride

#endif
