#include <iostream>

#include "cyclabel/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return cyclabel::run_cli(args, std::cout, std::cerr);
}
