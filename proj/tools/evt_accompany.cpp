#include <iostream>

#include "evt/cli.hpp"

int main(int argc, char** argv) { return evt::cli::main_entry(argc, argv, std::cout, std::cerr); }
