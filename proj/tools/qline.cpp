#include <iostream>

#include "qline/cli/commands.hpp"

int main(int argc, char** argv) { return qline::cli::run(argc, argv, std::cout, std::cerr); }
