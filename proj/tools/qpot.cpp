#include <iostream>

#include "qpot/cli.hpp"

int main(int argc, char** argv) { return qpot::cli::run(argc, argv, std::cout, std::cerr); }
