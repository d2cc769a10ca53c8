#include <iostream>

#include "nsgap/cli/cli.hpp"

int main(int argc, char** argv) { return nsgap::cli::run(argc, argv, std::cout, std::cerr); }
