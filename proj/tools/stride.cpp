// Command-line driver: parse a PDDL task, ground it, search for a plan, and
// emit the plan / heuristic trace.  Can also replay and check an existing
// plan file against the task (--validate).

#include "CLI11.hpp"

#include "stride/ground.hpp"
#include "stride/pddl/parser.hpp"
#include "stride/plan.hpp"
#include "stride/rpg.hpp"
#include "stride/search.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot read file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
    if (!out)
        throw std::runtime_error("cannot write file: " + path);
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"stride: forward-chaining heuristic-search planner for PDDL tasks"};

    std::string domain_path, problem_path, plan_out, trace_out, validate_path;
    std::string plateau = "least-bad", fallback = "greedy";
    bool no_macros = false, dump_macros = false;
    long max_seconds = 1800;
    std::size_t max_ground_actions = stride::GroundOptions{}.max_ground_actions;

    app.add_option("--domain", domain_path, "domain PDDL file")->required();
    app.add_option("--problem", problem_path, "problem PDDL file")->required();
    app.add_option("-o", plan_out, "write the plan to this file (default: stdout)");
    app.add_option("--trace", trace_out, "write the heuristic trace CSV to this file");
    app.add_flag("--no-macros", no_macros, "disable plateau-escaping macro learning");
    app.add_option("--plateau", plateau, "plateau search order")
        ->check(CLI::IsMember({"least-bad", "breadth"}));
    app.add_option("--fallback", fallback, "search used after hill-climbing fails")
        ->check(CLI::IsMember({"greedy", "plain-bfs"}));
    app.add_option("--max-seconds", max_seconds, "wall-clock budget for the search")
        ->check(CLI::PositiveNumber);
    app.add_option("--max-ground-actions", max_ground_actions,
                   "abort grounding beyond this many ground actions");
    app.add_flag("--dump-macros", dump_macros, "print the learned macro library");
    app.add_option("--validate", validate_path,
                   "validate this plan file against the task instead of planning");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 2;
    }

    try {
        auto dom = stride::pddl::parse_domain(read_file(domain_path));
        auto prob = stride::pddl::parse_problem(read_file(problem_path), dom);
        stride::GroundOptions gopts;
        gopts.max_ground_actions = max_ground_actions;
        stride::GroundTask task = stride::ground(dom, prob, gopts);
        stride::bootstrap_reachable(task);

        if (!validate_path.empty()) {
            auto steps = stride::parse_plan(read_file(validate_path));
            auto verdict = stride::validate_plan(task, steps);
            std::cout << verdict.message << "\n";
            return verdict.ok ? 0 : 1;
        }

        stride::SearchOptions opts;
        opts.use_macros = !no_macros;
        opts.plateau = plateau == "breadth" ? stride::PlateauMode::Breadth
                                            : stride::PlateauMode::LeastBad;
        opts.fallback = fallback == "plain-bfs" ? stride::FallbackMode::PlainBfs
                                                : stride::FallbackMode::Greedy;
        opts.deadline =
            std::chrono::steady_clock::now() + std::chrono::seconds(max_seconds);

        stride::SearchResult result = stride::solve(task, opts);

        if (!trace_out.empty())
            write_file(trace_out, result.trace.to_csv());
        if (dump_macros) {
            const auto &macros = result.macros.macros();
            std::cout << "macros learned: " << macros.size() << "\n";
            for (std::size_t i = 0; i < macros.size(); ++i)
                std::cout << "macro " << i << ": " << macros[i].to_string()
                          << " [uses " << macros[i].uses << "]\n";
        }

        switch (result.status) {
        case stride::SearchStatus::Solved: {
            std::string text = stride::format_plan(task, result.plan);
            if (plan_out.empty())
                std::cout << text;
            else
                write_file(plan_out, text);
            std::cout << "plan found: " << result.plan.size() << " steps, "
                      << result.evaluated << " states evaluated\n";
            return 0;
        }
        case stride::SearchStatus::Unsolvable:
            std::cerr << "no plan exists\n";
            return 1;
        case stride::SearchStatus::Budget:
            std::cerr << "search budget exhausted before a plan was found\n";
            return 2;
        }
        return 2; // unreachable
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
