#include "sgdrates/cli.hpp"

int main(int argc, char** argv) {
  return sgdrates::run_cli(argc, argv);
}
