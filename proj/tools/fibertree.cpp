#include <iostream>

#include "fibertree/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return fibertree::cli::run(args, std::cout, std::cerr);
}
