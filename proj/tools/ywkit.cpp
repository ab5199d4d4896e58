#include <iostream>

#include "ywkit/cli.hpp"

int main(int argc, char** argv) {
  try {
    return ywkit::run_cli(argc, argv, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "ywkit: internal error: " << e.what() << "\n";
    return ywkit::exit_internal;
  }
}
