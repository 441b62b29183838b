#include <iostream>
#include <string>
#include <vector>

#include "mbsim/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return mbsim::cli::dispatch(args, std::cout, std::cerr);
}
