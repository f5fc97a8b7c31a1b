#include <iostream>

#include "quadcomp/cli.hpp"

int main(int argc, char** argv) { return quadcomp::cli::run(argc, argv, std::cout, std::cerr); }
