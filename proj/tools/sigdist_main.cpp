#include <iostream>
#include <string>
#include <vector>

#include "sigdist/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return sigdist::cli::run(args, std::cout, std::cerr);
}
