#include <iostream>
#include <string>
#include <vector>

#include "lozi/cli.h"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return lozi::run_cli(args, std::cout, std::cerr);
}
