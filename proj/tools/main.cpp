#include <iostream>
#include <string>
#include <vector>

#include "toricmono/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  toricmono::RunResult r = toricmono::run(args);
  std::cout << r.report;
  return r.exit_code;
}
