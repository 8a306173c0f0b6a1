#ifndef STRIDE_PLAN_HPP
#define STRIDE_PLAN_HPP

#include "stride/ground.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace stride {

struct PlanStep {
    std::string schema;
    std::vector<std::string> args;
    bool operator==(const PlanStep &) const = default;
};

inline std::string format_plan(const GroundTask &t, const std::vector<int> &actions) {
    std::ostringstream os;
    for (std::size_t i = 0; i < actions.size(); ++i)
        os << i << ": " << t.action(actions[i]).name() << " [1]\n";
    return os.str();
}

// Reads plan text back: one action per line as "N: (name args) [1]", where
// the step number and the trailing cost are optional; ';' starts a comment.
inline std::vector<PlanStep> parse_plan(const std::string &text) {
    std::vector<PlanStep> steps;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string &why) {
        throw std::runtime_error("plan line " + std::to_string(lineno) + ": " + why);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (auto semi = line.find(';'); semi != std::string::npos)
            line.erase(semi);
        std::size_t pos = 0;
        auto skip_ws = [&] {
            while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos])))
                ++pos;
        };
        skip_ws();
        if (pos == line.size())
            continue;
        if (std::isdigit(static_cast<unsigned char>(line[pos]))) {
            while (pos < line.size() && std::isdigit(static_cast<unsigned char>(line[pos])))
                ++pos;
            skip_ws();
            if (pos == line.size() || line[pos] != ':')
                fail("expected ':' after the step number");
            ++pos;
            skip_ws();
        }
        if (pos == line.size() || line[pos] != '(')
            fail("expected '(' to open the action");
        ++pos;
        auto close = line.find(')', pos);
        if (close == std::string::npos)
            fail("missing ')'");
        std::istringstream body(line.substr(pos, close - pos));
        PlanStep step;
        std::string tok;
        while (body >> tok) {
            for (auto &c : tok)
                c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
            if (step.schema.empty())
                step.schema = tok;
            else
                step.args.push_back(tok);
        }
        if (step.schema.empty())
            fail("empty action");
        pos = close + 1;
        skip_ws();
        if (pos < line.size() && line[pos] == '[') {
            auto end = line.find(']', pos);
            if (end == std::string::npos)
                fail("missing ']'");
            pos = end + 1;
            skip_ws();
        }
        if (pos != line.size())
            fail("unexpected trailing text");
        steps.push_back(std::move(step));
    }
    return steps;
}

struct ValidationResult {
    bool ok = false;
    std::string message;
};

inline ValidationResult validate_plan(const GroundTask &t, const std::vector<PlanStep> &steps) {
    std::vector<int> counters;
    State s = t.init;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        std::string shown = "(" + steps[i].schema;
        for (const auto &a : steps[i].args)
            shown += " " + a;
        shown += ")";
        int id = t.find_instance(steps[i].schema, steps[i].args);
        if (id == -1)
            return {false, "step " + std::to_string(i) + ": unknown action " + shown};
        if (!holds(t.action(id).pre, s))
            return {false, "step " + std::to_string(i) + ": " + shown + " is not applicable"};
        s = t.apply(s, id, counters);
    }
    if (!t.goal_satisfied(s))
        return {false, "plan does not reach the goal"};
    return {true, "plan valid: " + std::to_string(steps.size()) + " steps"};
}

inline ValidationResult validate_plan(const GroundTask &t, const std::vector<int> &actions) {
    std::vector<PlanStep> steps;
    steps.reserve(actions.size());
    for (int id : actions)
        steps.push_back({t.action(id).schema, t.action(id).args});
    return validate_plan(t, steps);
}

} // namespace stride

#endif
