#include <iostream>

#include "aimsolve/cli.hpp"

int main(int argc, char** argv) {
  return aimsolve::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
