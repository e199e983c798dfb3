#include <iostream>

#include "formsieve/cli.hpp"

int main(int argc, char** argv) {
  return formsieve::run_cli(argc, argv, std::cout, std::cerr);
}
