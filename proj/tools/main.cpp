#include "report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

enum Exit { kOk = 0, kUsage = 1, kInvalid = 2, kInconsistent = 3 };

std::optional<std::string> slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cohomotopy groups of (n-1)-connected (2n+2)-manifolds, n = 2, 3, 4"};
  std::string input;
  std::string steenrod;
  std::string format = "text";
  std::optional<int> degree;
  bool check = false;
  bool oracle = false;
  app.add_option("--input", input, "descriptor file (JSON)")->required();
  app.add_option("--degree", degree, "report only this cohomotopy degree")->check(CLI::PositiveNumber);
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--check", check, "run the homology and cross-engine consistency checks");
  app.add_flag("--oracle", oracle, "certify the normal form against the orbit oracle");
  app.add_option("--steenrod", steenrod, "operation matrices (JSON), overrides the descriptor's");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  manicoh::ManifoldDescriptor d;
  try {
    const auto text = slurp(input);
    if (!text) {
      std::cerr << "input: cannot read " << input << "\n";
      return kInvalid;
    }
    d = manicoh::parse_descriptor(*text);
    if (!steenrod.empty()) {
      const auto s = slurp(steenrod);
      if (!s) {
        std::cerr << "steenrod: cannot read " << steenrod << "\n";
        return kInvalid;
      }
      d.steenrod = manicoh::parse_steenrod(*s);
    }
  } catch (const manicoh::DescriptorParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kInvalid;
  }

  manicoh::report::Report r;
  try {
    r = manicoh::report::build(d, {degree, check, oracle});
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInconsistent;
  }

  std::cout << (format == "json" ? manicoh::report::render_json(r) : manicoh::report::render_text(r));

  if (!r.validation.ok) {
    for (const auto& v : r.validation.violations)
      std::cerr << "validation failed: " << v.path << ": " << v.message << " [" << v.rule << "]\n";
    return kInvalid;
  }
  if (r.checks && (!r.checks->homology_ok || !r.checks->consistency_ok)) return kInconsistent;
  if (r.oracle && r.oracle->status == "mismatch") return kInconsistent;
  return kOk;
}
