#include <iostream>

#include "learnaug/harness.hpp"

int main(int argc, char** argv) {
  return learnaug::harness::run_cli(argc, argv, std::cout, std::cerr);
}
