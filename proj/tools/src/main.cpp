#include <iostream>
#include <string>
#include <vector>

#include "gazener/cli/app.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return gazener::cli::run(args, std::cout, std::cerr);
}
