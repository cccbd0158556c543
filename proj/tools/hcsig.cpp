#include <iostream>

#include "hcsig/cli.hpp"

int main(int argc, char** argv) { return hcsig::run_cli(argc, argv, std::cout, std::cerr); }
