#include "lpval/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return lpval::cli::run(argc, argv, std::cout, std::cerr); }
