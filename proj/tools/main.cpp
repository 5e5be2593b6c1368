#include <iostream>
#include <vector>

#include "serialhom/commands.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return serialhom::run_command(args, std::cout, std::cerr);
}
