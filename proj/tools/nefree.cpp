#include <iostream>
#include <string>
#include <vector>

#include <nefree/cli.hpp>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return nefree::cli_dispatch(args, std::cout, std::cerr);
}
