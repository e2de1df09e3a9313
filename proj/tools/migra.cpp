#include <iostream>

#include "migra/cli.hpp"

int main(int argc, char** argv) {
  return migra::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
