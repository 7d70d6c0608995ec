#include <iostream>

#include "nslrs/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return nslrs::run_cli(args, std::cout, std::cerr);
}
