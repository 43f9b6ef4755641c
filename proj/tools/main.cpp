#include "covtrans/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return covtrans::cli::run(argc, argv, std::cout, std::cerr); }
