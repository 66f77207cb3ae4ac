#include <iostream>

#include "f4kit/cli.hpp"

int main(int argc, char** argv) { return f4kit::cli::run(argc, argv, std::cout, std::cerr); }
