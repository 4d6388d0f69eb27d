#include "twophase/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return twophase::run_cli(argc, argv, std::cout, std::cerr); }
