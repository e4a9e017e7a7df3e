#include <iostream>

#include "run.hpp"

int main(int argc, char** argv) { return torsionlab::cli::main_with_args(argc, argv, std::cout, std::cerr); }
