#include <iostream>

#include "qgeom/cli.hpp"

int main(int argc, char** argv) { return qgeom::cli::main_entry(argc, argv, std::cout, std::cerr); }
