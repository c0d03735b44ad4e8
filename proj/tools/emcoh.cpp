#include <iostream>

#include "emcoh/cli.hpp"

int main(int argc, char** argv) { return emcoh::run_cli(argc, argv, std::cout, std::cerr); }
