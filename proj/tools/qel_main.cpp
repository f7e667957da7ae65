#include <iostream>

#include "qel/cli.hpp"

int main(int argc, char** argv) { return qel::run_cli(argc, argv, std::cout, std::cerr); }
