#include <iostream>

#include "tps/cli.hpp"

int main(int argc, char** argv) {
  return tps::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
