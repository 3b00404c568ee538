#include <iostream>

#include "dasa/cli/cli.hpp"

int main(int argc, char** argv) { return dasa::cli::run(argc, argv, std::cout, std::cerr); }
