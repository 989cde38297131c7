#include <iostream>

#include "dpfuzz/cli.hpp"

int main(int argc, char** argv) {
  return dpfuzz::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
