#include <iostream>

#include "agc/cli.hpp"

int main(int argc, char** argv) { return agc::run_cli(argc, argv, std::cout, std::cerr); }
