#include <iostream>

#include "causal_sep/cli.hpp"

int main(int argc, char** argv) {
  return causal_sep::cli::main(argc, argv, std::cout, std::cerr);
}
