#include <iostream>

#include "knightmagic/cli.hpp"

int main(int argc, char** argv) { return knightmagic::run_cli(argc, argv, std::cout, std::cerr); }
