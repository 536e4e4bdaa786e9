#include <iostream>

#include "klcalc/cli.hpp"

int main(int argc, char** argv) { return cli::run(argc, argv, std::cout, std::cerr); }
