#include <iostream>
#include <string>
#include <vector>

#include "gvp/cli.h"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return gvp::run_cli(args, std::cout, std::cerr);
}
