#include <iostream>
#include <string>
#include <vector>

#include "ldasvm/commands.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return ldasvm::run_cli(args, std::cout, std::cerr);
}
