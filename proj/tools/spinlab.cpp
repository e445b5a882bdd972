#include <iostream>
#include <string>
#include <vector>

#include "spinlab/cli/commands.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return spinlab::cli::run_cli(args, std::cout, std::cerr);
}
