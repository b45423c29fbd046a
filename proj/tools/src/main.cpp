#include <iostream>

#include "rsol_cli/cli.hpp"

int main(int argc, char** argv) { return rsol::cli::run(argc, argv, std::cout, std::cerr); }
