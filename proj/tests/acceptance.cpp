#include <cstring>
#include <iostream>

#include "repro.hpp"

int main(int argc, char** argv) {
  pebbling::repro::Options opt;
  opt.heavy = true;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--light") == 0) opt.heavy = false;
  pebbling::repro::Artifacts csv;
  bool all = true;
  pebbling::repro::run(opt, csv, [&](const pebbling::repro::Outcome& o) {
    all = all && o.pass;
    std::cout << pebbling::repro::format(o) << std::endl;
  });
  return all ? 0 : 1;
}
