#include <iostream>

#include "empskit/cli.hpp"

int main(int argc, char** argv) {
    return empskit::cli::run_command_line(argc, argv, std::cout, std::cerr);
}
