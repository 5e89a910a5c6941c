#include <iostream>

#include "symred/cli.hpp"

int main(int argc, char** argv) { return symred::cli::run(argc, argv, std::cout, std::cerr); }
