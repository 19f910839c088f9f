#include <iostream>

#include "no3theta/cli.hpp"

int main(int argc, char** argv) {
  return no3theta::cli::run_cli(argc, argv, std::cin, std::cout, std::cerr);
}
