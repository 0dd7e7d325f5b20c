#include <iostream>

#include "enkcf/cli.hpp"

int main(int argc, char** argv) { return enkcf::run_cli(argc, argv, std::cout, std::cerr); }
