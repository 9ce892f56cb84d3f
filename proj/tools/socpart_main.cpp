#include <iostream>

#include "socpart/cli.hpp"

int main(int argc, char** argv) { return socpart::cli_dispatch(argc, argv, std::cout, std::cerr); }
