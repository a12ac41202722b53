#include <iostream>

#include "qorbit/cli.hpp"

int main(int argc, char** argv) { return qorbit::cli::dispatch(argc, argv, std::cout, std::cerr); }
