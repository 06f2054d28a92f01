#include <iostream>

#include "hklab_cli/cli.hpp"

int main(int argc, char** argv) { return hklab::cli::run(argc, argv, std::cout, std::cerr); }
