#include <iostream>

#include "entqa/cli.hpp"

int main(int argc, char** argv) { return entqa::cli::run(argc, argv, std::cout, std::cerr); }
