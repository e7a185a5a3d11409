#pragma once

#include <iosfwd>
#include <variant>

#include "xsq/corpus.hpp"
#include "xsq/homotopy.hpp"

namespace xsq {

/// One parsed document: named groups, homs, actions and integer tables,
/// plus a single top-level structure referring to them by name.
struct StructureFile {
  std::string kind;
  std::variant<CrossedModule, CrossedSquare, TwoCrossedModule, QuadraticModule, Cat1Group,
               Cat2Group, TruncatedSimplicialGroup, TruncatedBisimplicialGroup>
      value;
};

StructureFile parse_structure(const std::string& text);
StructureFile load_structure(const std::string& path);
std::string serialize_structure(const StructureFile& s);

StructureFile demo_structure(const std::string& name);

/// Runs the kind's axiom checker. Returns the violation report.
Report check_structure(const StructureFile& s);

struct CliOptions {
  bool verbose = false;
  int max_order = 64;
};

// exit codes: 0 pass, 1 axiom/semantic failure, 2 input error
int cmd_check(const std::string& path, std::ostream& out, const CliOptions& opt);
int cmd_convert(const std::string& path, const std::string& to, const std::string& out_path,
                std::ostream& out, const CliOptions& opt);
int cmd_homotopy(const std::string& path, std::ostream& out, const CliOptions& opt);
int cmd_diagram(const std::string& path, std::ostream& out, const CliOptions& opt);
int cmd_demo(const std::string& name, const std::string& out_path, std::ostream& out);

}  // namespace xsq
