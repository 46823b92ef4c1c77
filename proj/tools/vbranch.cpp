#include "vbranch/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return vb::run_cli(argc, argv, std::cout, std::cerr); }
