#include <iostream>

#include "gausscircle_cli.hpp"

int main(int argc, char** argv) { return gausscircle::cli::run(argc, argv, std::cout, std::cerr); }
