#include "eslr_cli/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return eslr::cli::run(argc, argv, std::cout, std::cerr); }
