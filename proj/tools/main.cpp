#include <iostream>

#include "tandemq/cli.hpp"

int main(int argc, char** argv) {
  return tandemq::run_command(argc, argv, std::cout, std::cerr);
}
