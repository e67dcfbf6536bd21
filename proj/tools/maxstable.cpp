#include <iostream>

#include "maxstable/cli.hpp"

int main(int argc, char** argv) { return maxstable::run_cli(argc, argv, std::cout, std::cerr); }
