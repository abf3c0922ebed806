#include <iostream>

#include "osfd/cli.hpp"

int main(int argc, char** argv) { return osfd::cli::main(argc, argv, std::cout, std::cerr); }
