#include <iostream>

#include "pptkit/cli.hpp"

int main(int argc, char** argv) {
  return pptkit::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
