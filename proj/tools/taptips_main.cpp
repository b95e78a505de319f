#include <iostream>

#include "taptips/cli.hpp"

int main(int argc, char** argv) { return taptips::cli::run(argc, argv, std::cout, std::cerr); }
