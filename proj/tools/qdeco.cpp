#include <iostream>

#include "qdeco/cli/run.hpp"

int main(int argc, char** argv) { return qdeco::cli::main(argc, argv, std::cout, std::cerr); }
