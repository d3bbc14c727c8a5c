#include <iostream>

#include "lagdpw/cli.hpp"

int main(int argc, char** argv) { return lagdpw::cli::run(argc, argv, std::cout, std::cerr); }
