#include <iostream>

#include "softextrap/cli.hpp"

int main(int argc, char** argv) { return softextrap::run_cli(argc, argv, std::cout, std::cerr); }
