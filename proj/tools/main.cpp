#include <iostream>

#include "ontic/cli.hpp"

int main(int argc, char** argv) { return ontic::cli::run(argc, argv, std::cout, std::cerr); }
