#include <iostream>

#include "chvatal/cli.hpp"

int main(int argc, char** argv) { return chvatal::cli::run(argc, argv, std::cout, std::cerr); }
