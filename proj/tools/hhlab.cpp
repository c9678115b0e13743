#include <iostream>

#include "hhlab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return hhlab::run(args, std::cout, std::cerr);
}
