#include <iostream>

#include "gdl/cli/commands.hpp"

int main(int argc, char** argv) { return gdl::cli::run(argc, argv, std::cout, std::cerr); }
