#include <iostream>

#include "pgl3/cli.hpp"

int main(int argc, char** argv) { return pgl3::cli::run(argc, argv, std::cout, std::cerr); }
