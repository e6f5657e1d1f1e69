#include <iostream>
#include <string>
#include <vector>

#include "pq3/commands.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    return pq3::cli::run_cli(args, std::cout, std::cerr);
}
