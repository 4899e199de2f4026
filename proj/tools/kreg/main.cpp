#include "kreg/commands.hpp"

#include <iostream>

int main(int argc, char** argv) { return kreg::cli::run(argc, argv, std::cout, std::cerr); }
