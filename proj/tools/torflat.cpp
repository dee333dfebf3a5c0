// Command-line front end: torflat grading|basis|unfold FILE [options]

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include <torflat/pipeline.hpp>

namespace {

bool read_file(const std::string &path, std::string &out) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Cayley-trick unfoldings and flat F-manifold structure constants"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string file, out_path, checks = "";
  std::size_t order = 0;
  bool allow_non_cy = false;

  app.add_option("--order", order, "Unfolding order N (overrides the problem file)")
      ->check(CLI::PositiveNumber);
  app.add_flag("--allow-non-cy", allow_non_cy, "Compute a basis at charge c_B for non-CY input");
  app.add_option("--checks", checks, "Verification checks to run")
      ->check(CLI::IsMember({"all", "fqm2", "axioms", "weights", "euler"}));
  app.add_option("--out", out_path, "Write the report to FILE instead of stdout");

  auto *grading = app.add_subcommand("grading", "Print the class-group grading summary");
  auto *basis = app.add_subcommand("basis", "Print the Jacobian quotient basis");
  auto *unfold = app.add_subcommand("unfold", "Run the unfolding and all verification checks");
  for (auto *sub : {grading, basis, unfold})
    sub->add_option("file", file, "Problem file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : torflat::exit_input_error;
  }

  std::string text;
  if (!read_file(file, text)) {
    std::cerr << "error: cannot read '" << file << "'\n";
    return torflat::exit_input_error;
  }

  torflat::CommandOptions opt;
  if (order > 0)
    opt.order = order;
  opt.allow_non_cy = allow_non_cy;
  if (!checks.empty())
    opt.checks = torflat::parse_check_set(checks);

  torflat::CommandResult result;
  if (grading->parsed())
    result = torflat::cmd_grading(text, opt);
  else if (basis->parsed())
    result = torflat::cmd_basis(text, opt);
  else
    result = torflat::cmd_unfold(text, opt);

  if (result.exit_code == torflat::exit_input_error) {
    std::cerr << result.text;
    return result.exit_code;
  }
  if (out_path.empty()) {
    std::cout << result.text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write '" << out_path << "'\n";
      return torflat::exit_input_error;
    }
    out << result.text;
  }
  return result.exit_code;
}
