#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "gaugefree/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitDisagreement = 2;
constexpr int kExitResourceCap = 3;

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw gaugefree::ParseError("cannot open input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const gaugefree::FreenessReport& report, const std::string& format) {
  if (format == "json")
    std::cout << gaugefree::report_to_json(report);
  else
    std::cout << gaugefree::report_to_text(report);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "gaugefree: decides freeness of the gauge circle action and its Z/k restrictions for\n"
      "finite graph / finite-dimensional commutative correspondence inputs.\n"
      "Input is a JSON document, graph form {vertices, edges, infinite} or matrix form\n"
      "{points, dims}; '-' reads standard input."};
  app.require_subcommand(1);

  std::string input_path;
  std::string groups_csv = "full,2,3";
  std::string format = "text";
  int max_len = 6;
  int bundle_size = 3;
  std::size_t max_products = 0;

  CLI::App* analyze_cmd = app.add_subcommand("analyze", "Run the analyzer verdicts per group.");
  analyze_cmd->add_option("input", input_path, "Input file, or - for stdin")->required();
  analyze_cmd->add_option("--groups", groups_csv, "Comma list of gauge groups: full and/or k >= 2");
  analyze_cmd->add_option("--format", format, "Output format: text|json")
      ->check(CLI::IsMember({"text", "json"}));

  CLI::App* verify_cmd = app.add_subcommand(
      "verify",
      "Analyze, then cross-check each verdict with the Leavitt path algebra oracle.\n"
      "The oracle is one-sided: it certifies freeness with an explicit unit certificate but\n"
      "never certifies non-freeness, so 'analyzer not free + oracle undecided' counts as\n"
      "agreement. Exit code 2 flags the real disagreement: analyzer free, oracle undecided.");
  verify_cmd->add_option("input", input_path, "Input file, or - for stdin")->required();
  verify_cmd->add_option("--groups", groups_csv, "Comma list of gauge groups: full and/or k >= 2");
  verify_cmd->add_option("--format", format, "Output format: text|json")
      ->check(CLI::IsMember({"text", "json"}));
  verify_cmd->add_option("--max-len", max_len, "Oracle factor-length search bound")
      ->check(CLI::NonNegativeNumber);
  verify_cmd->add_option("--oracle-bundle-size", bundle_size,
                         "Representative edges per infinite bundle")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--max-products", max_products,
                         "Abort the oracle search beyond this many products (0 = unlimited)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    gaugefree::InputDocument doc = gaugefree::parse_input(read_input(input_path));
    std::vector<gaugefree::GroupSpec> groups = gaugefree::parse_groups(groups_csv);
    if (app.got_subcommand(analyze_cmd)) {
      emit(gaugefree::analyze(doc, groups), format);
      return kExitOk;
    }
    gaugefree::FreenessReport report =
        gaugefree::verify(doc, groups, max_len, bundle_size, max_products);
    emit(report, format);
    if (report.resource_capped) return kExitResourceCap;
    if (report.disagreement) return kExitDisagreement;
    return kExitOk;
  } catch (const gaugefree::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
