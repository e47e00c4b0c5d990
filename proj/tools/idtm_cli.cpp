#include <iostream>
#include <string>
#include <vector>

#include "idtm/cli/app.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return idtm::cli::main_entry(args, std::cout, std::cerr);
}
