#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  growth::cli::ParsedArgs args;
  try {
    args = growth::cli::parse_args(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  if (args.help) {
    std::cout << args.help_text;
    return 0;
  }
  return growth::cli::run(args.config, std::cout, std::cerr);
}
