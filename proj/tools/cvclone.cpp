#include <iostream>

#include "cvclone/cli/commands.hpp"

int main(int argc, char** argv) {
    return cvclone::cli::run_cli(argc, argv, std::cout, std::cerr);
}
