#include <iostream>
#include <string>
#include <vector>

#include "cocoon/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return cocoon::cli::dispatch(args, std::cout, std::cerr);
}
