#include <iostream>

#include "qhj/cli.hpp"

int main(int argc, char** argv) { return qhj::cli::main(argc, argv, std::cout, std::cerr); }
