#include <iostream>

#include "tdho_cli/app.hpp"

int main(int argc, char** argv) { return tdho::cli::run_cli(argc, argv, std::cout, std::cerr); }
