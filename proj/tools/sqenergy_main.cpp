#include <iostream>

#include "sqenergy/cli.hpp"

int main(int argc, char** argv) { return sqenergy::cli::main_entry(argc, argv, std::cout, std::cerr); }
