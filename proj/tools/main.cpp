#include "mcc/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return mcc::run_cli(argc, argv, std::cout, std::cerr); }
