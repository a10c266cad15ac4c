#include <iostream>

#include "polyincl/cli.hpp"

int main(int argc, char** argv) { return polyincl::cli::main(argc, argv, std::cout, std::cerr); }
