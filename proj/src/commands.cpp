// SPDX-FileCopyrightText: Copyright (c) 2026, The gajd-chase Authors.
// SPDX-License-Identifier: Apache-2.0

#include "gajd/commands.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <ostream>
#include <sstream>

#include "gajd/oracle.hpp"
#include "gajd/problem.hpp"

namespace gajd {

namespace {

// Maps library exceptions onto exit codes; `body` returns the code for the
// normal path.
int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
  } catch (const ChaseLimitExceeded& e) {
    err << "error: " << e.what() << " (raise GAJD_CHASE_MAX_ROWS)\n";
    return kExitChaseLimit;
  } catch (const DomainTooLarge& e) {
    err << "error: domain too large: " << e.what() << "\n";
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitUsage;
}

std::string header(const ProblemFile& f, std::size_t q) {
  return "query " + std::to_string(q + 1) + ": " + f.format_query(q) + "\n";
}

Verdict decide(const ProblemFile& f, const UniversePtr& u, std::size_t q, std::size_t max_rows) {
  ChaseOptions opts;
  opts.stop_at_goal = true;
  opts.max_rows = max_rows;
  return implies(f.rules(u, q), f.target(u, q), opts);
}

}  // namespace

std::size_t chase_max_rows_from_env() {
  const char* v = std::getenv("GAJD_CHASE_MAX_ROWS");
  if (v == nullptr) return kDefaultChaseMaxRows;
  std::size_t n = 0;
  const char* end = v + std::strlen(v);
  const auto [ptr, ec] = std::from_chars(v, end, n);
  if (ec != std::errc() || ptr != end || n == 0) {
    throw UsageError(std::string("GAJD_CHASE_MAX_ROWS must be a positive integer, got '") + v + "'");
  }
  return n;
}

int cmd_implies(std::string_view text, const ImpliesFlags& flags, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ProblemFile f = parse_problem(text);
    const UniversePtr u = f.universe();
    std::ostringstream buf;
    bool mismatch = false;
    for (std::size_t q = 0; q < f.queries.size(); ++q) {
      const Verdict v = decide(f, u, q, flags.max_rows);
      if (flags.json) {
        buf << verdict_to_jsonl(v, q + 1);
      } else {
        buf << header(f, q) << format_verdict(v, flags.trace, flags.factorize);
      }
      if (flags.expect && *flags.expect != v.holds) mismatch = true;
    }
    out << buf.str();
    if (mismatch) {
      err << "verdict does not match --expect " << (*flags.expect ? "yes" : "no") << "\n";
      return static_cast<int>(kExitMismatch);
    }
    return static_cast<int>(kExitOk);
  });
}

int cmd_verify(std::string_view text, const VerifyFlags& flags, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    OracleConfig cfg;
    cfg.seed = flags.seed;
    cfg.trials = flags.trials;
    cfg.validate();
    const ProblemFile f = parse_problem(text);
    const UniversePtr u = f.universe();
    u->cell_count(u->all(), kMaxOracleCells);
    std::ostringstream buf;
    bool failed = false;
    for (std::size_t q = 0; q < f.queries.size(); ++q) {
      const Verdict v = decide(f, u, q, flags.max_rows);
      std::vector<Gajd> constraints;
      for (const JRule& r : f.rules(u, q)) constraints.push_back(r.constraint);
      const Gajd target = f.target(u, q);
      buf << header(f, q) << "IMPLIES: " << (v.holds ? "yes" : "no") << "\n";
      if (v.holds) {
        const SoundnessReport rep = check_soundness(constraints, target, cfg);
        failed |= rep.status == OracleStatus::Fail;
        buf << format_report(rep);
      } else {
        buf << format_report(search_counterexample(constraints, target, cfg));
      }
    }
    out << buf.str();
    if (failed) {
      err << "soundness check failed: the chase verdict disagrees with the numeric oracle\n";
      return static_cast<int>(kExitMismatch);
    }
    return static_cast<int>(kExitOk);
  });
}

int cmd_tableau(std::string_view text, std::size_t query, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ProblemFile f = parse_problem(text);
    if (query == 0 || query > f.queries.size()) {
      throw UsageError("query " + std::to_string(query) + " out of range; the file has " +
                       std::to_string(f.queries.size()));
    }
    const UniversePtr u = f.universe();
    out << build_tr(f.target(u, query - 1)).to_figure();
    return static_cast<int>(kExitOk);
  });
}

}  // namespace gajd
