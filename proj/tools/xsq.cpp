#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "xsq/structure_file.hpp"

int main(int argc, char** argv) {
  CLI::App app{"finite-group models of homotopy 3-types: checkers, conversions, homotopy"};
  app.require_subcommand(1);

  xsq::CliOptions opt;
  app.add_flag("--verbose", opt.verbose, "print all violation witnesses");
  app.add_option("--max-order", opt.max_order, "isomorphism search bound")->default_val(64);

  std::string file, to, out_path, name;

  auto* check = app.add_subcommand("check", "validate a structure file against its axioms");
  check->add_option("file", file, "structure file")->required();

  auto* convert = app.add_subcommand("convert", "apply a conversion functor");
  convert->add_option("file", file, "structure file")->required();
  convert->add_option("--to", to, "target kind")->required();
  convert->add_option("--out", out_path, "output path")->required();

  auto* homotopy = app.add_subcommand("homotopy", "print pi1, pi2, pi3");
  homotopy->add_option("file", file, "structure file")->required();

  auto* diagram = app.add_subcommand("diagram", "run every route from a crossed square");
  diagram->add_option("file", file, "structure file")->required();

  auto* demo = app.add_subcommand("demo", "write a built-in example");
  demo->add_option("name", name, "demo name")->required();
  demo->add_option("--out", out_path, "output path")->required();

  CLI11_PARSE(app, argc, argv);

  if (check->parsed()) return xsq::cmd_check(file, std::cout, opt);
  if (convert->parsed()) return xsq::cmd_convert(file, to, out_path, std::cout, opt);
  if (homotopy->parsed()) return xsq::cmd_homotopy(file, std::cout, opt);
  if (diagram->parsed()) return xsq::cmd_diagram(file, std::cout, opt);
  if (demo->parsed()) return xsq::cmd_demo(name, out_path, std::cout);
  return 2;
}
