#include <vector>

#include "latmcts/cli_app.hpp"

int main(int argc, char** argv) {
  return latmcts::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
