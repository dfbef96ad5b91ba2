#include <string>
#include <vector>

#include "schwarz_ocp/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return schwarz_ocp::cli::main_entry(args);
}
