#include <iostream>
#include <string>
#include <vector>

#include "ardt_cli/commands.hpp"

int main(int argc, char** argv) {
  return ardt::cli::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
