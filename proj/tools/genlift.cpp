#include <iostream>

#include "genlift/cli.hpp"

int main(int argc, char** argv) {
  return genlift::cli::run(argc, argv, std::cout, std::cerr);
}
