#include <atomic>
#include <csignal>
#include <iostream>

#include "csft/cli.hpp"

namespace {

std::atomic<bool> cancel_requested{false};

extern "C" void on_interrupt(int) { cancel_requested.store(true); }

}  // namespace

int main(int argc, char** argv) {
  std::signal(SIGINT, on_interrupt);
  std::signal(SIGTERM, on_interrupt);
  std::vector<std::string> args(argv + 1, argv + argc);
  return csft::run_cli(args, std::cout, std::cerr, &cancel_requested);
}
