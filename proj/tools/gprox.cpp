#include <iostream>
#include <string>
#include <vector>

#include "gprox/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return gprox::cli::run(args, std::cout, std::cerr);
}
