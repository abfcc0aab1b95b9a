#include <iostream>

#include "jsrec/cli.hpp"

int main(int argc, char** argv) { return jsrec::cli::run(argc, argv, std::cout, std::cerr); }
