#include <iostream>
#include <string>
#include <vector>

#include "recforge/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return recforge::cli::run(std::move(args), std::cout);
}
