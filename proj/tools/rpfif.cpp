#include <iostream>

#include "rpfif/cli.hpp"

int main(int argc, char** argv) { return rpfif::cli_main(argc, argv, std::cout, std::cerr); }
