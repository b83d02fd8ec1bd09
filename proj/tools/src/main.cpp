#include <iostream>

#include "opcone_cli/commands.hpp"

int main(int argc, char** argv) { return opcone::cli::run(argc, argv, std::cout, std::cerr); }
