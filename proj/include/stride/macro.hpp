#ifndef STRIDE_MACRO_HPP
#define STRIDE_MACRO_HPP

#include "stride/ground.hpp"

#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace stride {

struct MacroStep {
    std::string schema;
    std::vector<int> slots; // argument position -> macro parameter index
    bool operator==(const MacroStep &) const = default;
};

// A lifted escape sequence: constants of the source path become parameters in
// order of first occurrence, typed by the schema slot that introduced them.
struct Macro {
    std::vector<MacroStep> steps;
    std::vector<std::string> param_types;
    int uses = 0;
    std::vector<int> source; // the ground path this macro was lifted from

    std::string signature() const {
        std::ostringstream os;
        for (const auto &t : param_types)
            os << t << ',';
        for (const auto &s : steps) {
            os << '|' << s.schema;
            for (int x : s.slots)
                os << ' ' << x;
        }
        return os.str();
    }

    std::string to_string() const {
        std::ostringstream os;
        os << '(';
        for (std::size_t i = 0; i < param_types.size(); ++i)
            os << (i ? " " : "") << "?x" << i << " - " << param_types[i];
        os << ") ->";
        for (const auto &s : steps) {
            os << " (" << s.schema;
            for (int x : s.slots)
                os << " ?x" << x;
            os << ')';
        }
        return os.str();
    }
};

inline Macro lift_macro(const GroundTask &t, const std::vector<int> &path) {
    Macro m;
    std::map<std::string, int> index;
    for (int id : path) {
        const GroundAction &a = t.action(id);
        const pddl::ActionSchema *schema = nullptr;
        for (const auto &sc : t.domain.schemata)
            if (sc.name == a.schema) {
                schema = &sc;
                break;
            }
        MacroStep step;
        step.schema = a.schema;
        for (std::size_t i = 0; i < a.args.size(); ++i) {
            auto [it, fresh] = index.try_emplace(a.args[i],
                                                 static_cast<int>(m.param_types.size()));
            if (fresh)
                m.param_types.push_back(schema->params[i].type);
            step.slots.push_back(it->second);
        }
        m.steps.push_back(std::move(step));
    }
    return m;
}

// Realizes a macro from `s`: the first step must be one of the `helpful_first`
// instances (they fix the parameters they mention), the rest of the binding
// is searched depth-first in object declaration order, pruning any step whose
// instance does not exist or is not applicable in the simulated state.  `fn`
// sees every complete realization (action ids plus the resulting state) and
// returns true to stop.  Returns true when the attempt budget ran out.
inline bool
for_each_instantiation(const Macro &m, const GroundTask &t, const State &s,
                       const std::vector<int> &helpful_first,
                       const std::function<bool(const std::vector<int> &, const State &)> &fn,
                       int budget = 10'000) {
    if (m.steps.empty())
        return false;
    std::vector<std::string> binding(m.param_types.size());
    std::vector<char> bound(m.param_types.size(), 0);
    std::vector<int> actions;
    std::vector<int> scratch;
    int attempts = 0;
    bool capped = false, stop = false;

    std::function<void(std::size_t, const State &)> run_step;
    std::function<void(std::size_t, std::size_t, const State &)> fill;

    fill = [&](std::size_t k, std::size_t j, const State &cur) {
        if (stop || capped)
            return;
        const MacroStep &step = m.steps[k];
        if (j == step.slots.size()) {
            if (++attempts > budget) {
                capped = true;
                return;
            }
            std::vector<std::string> args;
            args.reserve(step.slots.size());
            for (int slot : step.slots)
                args.push_back(binding[static_cast<std::size_t>(slot)]);
            int id = t.find_instance(step.schema, args);
            if (id == -1)
                return; // instance folded away at ground time
            if (!holds(t.action(id).pre, cur))
                return;
            State next = t.apply(cur, id, scratch);
            actions.push_back(id);
            run_step(k + 1, next);
            actions.pop_back();
            return;
        }
        int p = step.slots[j];
        if (bound[static_cast<std::size_t>(p)]) {
            fill(k, j + 1, cur);
            return;
        }
        bound[static_cast<std::size_t>(p)] = 1;
        for (const auto &obj : t.objects.of_type(m.param_types[static_cast<std::size_t>(p)])) {
            binding[static_cast<std::size_t>(p)] = obj;
            fill(k, j + 1, cur);
            if (stop || capped)
                break;
        }
        bound[static_cast<std::size_t>(p)] = 0;
    };

    run_step = [&](std::size_t k, const State &cur) {
        if (stop || capped)
            return;
        if (k == m.steps.size()) {
            stop = fn(actions, cur);
            return;
        }
        fill(k, 0, cur);
    };

    for (int id : helpful_first) {
        const GroundAction &a = t.action(id);
        if (a.schema != m.steps[0].schema)
            continue;
        bool consistent = true;
        std::vector<int> assigned;
        const MacroStep &first = m.steps[0];
        for (std::size_t j = 0; j < first.slots.size(); ++j) {
            std::size_t p = static_cast<std::size_t>(first.slots[j]);
            if (bound[p]) {
                if (binding[p] != a.args[j]) {
                    consistent = false;
                    break;
                }
            } else {
                bound[p] = 1;
                binding[p] = a.args[j];
                assigned.push_back(static_cast<int>(p));
            }
        }
        if (consistent) {
            if (++attempts > budget) {
                capped = true;
            } else {
                // helpful instances are applicable by construction
                State next = t.apply(s, id, scratch);
                actions.push_back(id);
                run_step(1, next);
                actions.pop_back();
            }
        }
        for (int p : assigned)
            bound[static_cast<std::size_t>(p)] = 0;
        if (stop || capped)
            break;
    }
    return capped;
}

// Per-problem store of learned macros, deduplicated by lifted shape.
class MacroLibrary {
  public:
    // Returns the index of the newly stored macro, or -1 when the path is too
    // short to be worth keeping or lifts to a shape already known.
    int learn(const GroundTask &t, const std::vector<int> &path) {
        if (path.size() < 2)
            return -1;
        Macro m = lift_macro(t, path);
        if (!signatures_.insert(m.signature()).second)
            return -1;
        m.source = path;
        macros_.push_back(std::move(m));
        return static_cast<int>(macros_.size()) - 1;
    }

    std::vector<Macro> &macros() { return macros_; }
    const std::vector<Macro> &macros() const { return macros_; }
    bool empty() const { return macros_.empty(); }

  private:
    std::vector<Macro> macros_;
    std::set<std::string> signatures_;
};

} // namespace stride

#endif
