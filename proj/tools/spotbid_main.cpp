#include <iostream>

#include "spotbid/cli.hpp"

int main(int argc, char** argv) { return spotbid::cli::run(argc, argv, std::cout); }
