// SPDX-FileCopyrightText: Copyright (c) 2026, The gajd-chase Authors.
// SPDX-License-Identifier: Apache-2.0

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "gajd/commands.hpp"
#include "gajd/error.hpp"

namespace {

bool read_file(const std::string& path, std::string& text) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream buf;
  buf << in.rdbuf();
  text = buf.str();
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Implication of generalized acyclic join dependencies by the chase"};
  app.require_subcommand(1);

  std::string file;
  gajd::ImpliesFlags implies_flags;
  std::string expect;
  auto* implies = app.add_subcommand("implies", "decide each query by chasing its tableau");
  implies->add_flag("--trace", implies_flags.trace, "print every chase step");
  implies->add_flag("--factorize", implies_flags.factorize, "print the factorization of implied queries");
  implies->add_flag("--json", implies_flags.json, "emit JSON Lines records instead of text");
  implies->add_option("--expect", expect, "exit 1 unless every verdict matches")
      ->check(CLI::IsMember({"yes", "no"}));
  implies->add_option("FILE", file, "problem file")->required();

  gajd::VerifyFlags verify_flags;
  auto* verify = app.add_subcommand("verify", "cross-check verdicts against random distributions");
  verify->add_option("--seed", verify_flags.seed, "master seed");
  verify->add_option("--trials", verify_flags.trials, "random distributions per query");
  verify->add_option("FILE", file, "problem file")->required();

  std::size_t query = 1;
  auto* tableau = app.add_subcommand("tableau", "print the initial tableau of a query");
  tableau->add_option("--query", query, "1-based query index");
  tableau->add_option("FILE", file, "problem file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : gajd::kExitUsage;
  }

  std::string text;
  if (!read_file(file, text)) {
    std::cerr << "error: cannot read " << file << "\n";
    return gajd::kExitUsage;
  }
  std::size_t max_rows = 0;
  try {
    max_rows = gajd::chase_max_rows_from_env();
  } catch (const gajd::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return gajd::kExitUsage;
  }
  if (*implies) {
    if (!expect.empty()) implies_flags.expect = expect == "yes";
    implies_flags.max_rows = max_rows;
    return gajd::cmd_implies(text, implies_flags, std::cout, std::cerr);
  }
  if (*verify) {
    verify_flags.max_rows = max_rows;
    return gajd::cmd_verify(text, verify_flags, std::cout, std::cerr);
  }
  return gajd::cmd_tableau(text, query, std::cout, std::cerr);
}
