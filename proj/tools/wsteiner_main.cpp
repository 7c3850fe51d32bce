#include <iostream>
#include <string>
#include <vector>

#include "wsteiner/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return wsteiner::run_command(args, std::cout, std::cerr);
}
