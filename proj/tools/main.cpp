#include <iostream>

#include "spheredet/cli/commands.hpp"

int main(int argc, char** argv) { return spheredet::cli::run(argc, argv, std::cout, std::cerr); }
