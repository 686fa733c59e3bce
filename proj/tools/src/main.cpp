#include "hcox_cli/run.hpp"

#include <iostream>

int main(int argc, char** argv) { return hcox::cli::main_entry(argc, argv, std::cout, std::cerr); }
