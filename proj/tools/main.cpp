#include <iostream>

#include "bakerlab/cli.hpp"

int main(int argc, char** argv) { return bakerlab::cli::main(argc, argv, std::cout, std::cerr); }
