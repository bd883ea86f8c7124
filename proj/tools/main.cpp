#include "sullivan/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return sullivan::run_cli(argc, argv, std::cout, std::cerr); }
