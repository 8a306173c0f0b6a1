// Regenerates the PDDL fixture files shipped under domains/ from the
// canonical strings in tests/fixtures.hpp.  The test suite checks the files
// on disk against the same strings, so edits must go through the fixtures
// header and a rerun of this tool.

#include "fixtures.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

namespace {

void emit(const std::filesystem::path &dir, const std::string &name,
          const std::string &content) {
    std::ofstream out(dir / name, std::ios::binary);
    out << content;
    if (!out) {
        std::cerr << "cannot write " << (dir / name).string() << "\n";
        std::exit(1);
    }
    std::cout << "wrote " << (dir / name).string() << "\n";
}

} // namespace

int main(int argc, char **argv) {
    std::filesystem::path dir = argc > 1 ? argv[1] : "domains";
    std::filesystem::create_directories(dir);

    emit(dir, "gripper-domain.pddl", fixtures::gripper_domain());
    emit(dir, "gripper-2.pddl", fixtures::gripper_problem(2));
    emit(dir, "gripper-3.pddl", fixtures::gripper_problem(3));
    emit(dir, "gripper-5.pddl", fixtures::gripper_problem(5));
    emit(dir, "gripper-10.pddl", fixtures::gripper_problem(10));
    emit(dir, "blocks-domain.pddl", fixtures::blocks_domain());
    emit(dir, "blocks-3.pddl", fixtures::blocks_problem(3, 2));
    emit(dir, "blocks-5.pddl", fixtures::blocks_problem(5, 4));
    emit(dir, "trap-domain.pddl", fixtures::trap_domain());
    emit(dir, "trap-1.pddl", fixtures::trap_problem());
    emit(dir, "kiln-domain.pddl", fixtures::kiln_domain());
    emit(dir, "kiln-2.pddl", fixtures::kiln_problem(2));
    emit(dir, "kiln-3.pddl", fixtures::kiln_problem(3));
    emit(dir, "kiln-14.pddl", fixtures::kiln_problem(14));
    emit(dir, "robot-gripper-domain.pddl", fixtures::robot_gripper_domain());
    emit(dir, "robot-gripper-2.pddl", fixtures::robot_gripper_problem(2));
    return 0;
}
