#include <iostream>

#include "app.hpp"

int main(int argc, char** argv) { return cone_exit::cli::run(argc, argv, std::cout, std::cerr); }
