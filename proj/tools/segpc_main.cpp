#include <iostream>

#include "segpc/cli.hpp"

int main(int argc, char** argv) { return segpc::cli::run(argc, argv, std::cout, std::cerr); }
