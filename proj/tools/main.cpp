#include <iostream>

#include "cyclat/cli.hpp"

int main(int argc, char** argv) { return cyclat::run_cli(argc, argv, std::cout, std::cerr); }
