#include <vector>

#include "hamlab/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return hamlab::run_cli(args);
}
