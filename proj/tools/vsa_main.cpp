#include <iostream>
#include <string>
#include <vector>

#include "vsa/io/cli.hpp"

int main(int argc, char** argv) {
  return vsa::io::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
