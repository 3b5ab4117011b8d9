#include <iostream>

#include "darkpassage/cli.hpp"

int main(int argc, char** argv) { return darkpassage::cli::run_main(argc, argv, std::cout, std::cerr); }
