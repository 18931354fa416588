#include <iostream>
#include <iterator>
#include <string>
#include <vector>

#include "ldsolve/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string stdin_text;
  for (const auto& a : args)
    if (a == "-") {
      stdin_text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
      break;
    }
  ldsolve::cli::Outcome r = ldsolve::cli::run(args, stdin_text);
  std::cout << r.out;
  std::cerr << r.err;
  return r.status;
}
