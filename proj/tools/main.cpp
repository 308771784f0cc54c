#include <iostream>

#include "hermpir/cli.hpp"

int main(int argc, char** argv) { return hermpir::cli::run(argc, argv, std::cout, std::cerr); }
