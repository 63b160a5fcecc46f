#include <iostream>

#include "fadecap/cli.hpp"

int main(int argc, char** argv) {
  return fadecap::run_cli(argc, argv, std::cout, std::cerr);
}
