#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return mahler::cli::run_cli(argc, argv, std::cout, std::cerr); }
