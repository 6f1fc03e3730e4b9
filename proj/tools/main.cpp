#include <iostream>
#include <string>
#include <vector>

#include "dsfa/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dsfa::cli::run(args, std::cout, std::cerr);
}
