// Writes a prototype color-naming table usable with --cn-table when the
// learned 32768 x 11 table is not at hand.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "prototype_color_table.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Generate a prototype color-naming table", "make_cn_table"};
  std::string out_path;
  double tau = 40.0;
  app.add_option("output", out_path, "destination file")->required();
  app.add_option("--tau", tau, "softmax temperature in RGB units")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  std::ofstream f(out_path, std::ios::binary);
  f << enkcf::tools::format_color_rows(enkcf::tools::prototype_color_rows(tau));
  if (!f) {
    std::cerr << "error: cannot write " << out_path << '\n';
    return 1;
  }
  return 0;
}
