#include <spinwire/runner.hpp>

int main(int argc, char** argv) {
  return spinwire::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
