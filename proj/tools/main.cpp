#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  return repvar::cli_run(argc, argv, std::cin, std::cout, std::cerr);
}
