#include "ksol/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return ksol::run_cli(argc, argv, std::cout, std::cerr); }
