#include "nhres/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return nhres::cli::run(argc, argv, std::cout, std::cerr); }
