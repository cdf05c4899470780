#include <iostream>
#include <string>
#include <vector>

#include "pbsgame/cli.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    return pbsgame::cli::run(args, std::cout, std::cerr);
}
