#include <iostream>

#include "lbv/cli.hpp"

int main(int argc, char** argv) { return lbv::cli::run(argc, argv, std::cout, std::cerr); }
