/**************************************************************************
 * Copyright 2026 The katoforge Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 **************************************************************************/

// Command-line front end: batch scripts, cache maintenance and self test.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "katoforge/cli/session.hpp"

namespace {

std::vector<katoforge::cli::CacheEntry> cache_entries(const std::vector<uint32_t>& primes, uint32_t max_level) {
  std::vector<katoforge::cli::CacheEntry> out;
  for (uint32_t p : primes)
    for (uint32_t i = 1; i <= max_level; ++i) out.push_back({p, i});
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  using katoforge::cli::Json;
  CLI::App app{"katoforge: Witt vectors, Milnor K-groups and Kato cohomology in characteristic p"};
  app.require_subcommand(0, 1);

  bool json = false, keep_going = false;
  std::string script, cache_dir;
  long precision = 32;
  uint64_t seed = 1;
  app.add_flag("--json", json, "Print every result as a single-line JSON object");
  app.add_option("--script", script, "Read statements from a file instead of stdin");
  app.add_option("--cache-dir", cache_dir, "Witt structure cache directory")->envname("KATOFORGE_CACHE");
  app.add_option("--precision", precision, "Default Laurent precision")->check(CLI::PositiveNumber);
  app.add_flag("--keep-going", keep_going, "Continue after errors (exit status stays nonzero)");
  app.add_option("--seed", seed, "Seed for selftest");

  auto* cache = app.add_subcommand("cache", "Manage the Witt structure cache");
  std::string action;
  std::vector<uint32_t> primes{2, 3};
  uint32_t max_level = 3;
  cache->add_option("action", action, "warm, verify or clear")->required()->check(CLI::IsMember({"warm", "verify", "clear"}));
  cache->add_option("--primes", primes, "Primes to warm or verify")->delimiter(',');
  cache->add_option("--max-level", max_level, "Largest Witt length to warm or verify")->check(CLI::Range(1, 27));

  auto* self = app.add_subcommand("selftest", "Run seeded randomized identity checks");
  int rounds = 50;
  self->add_option("--rounds", rounds, "Rounds per check family")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (!cache_dir.empty()) katoforge::set_witt_cache_dir(cache_dir);
    if (cache->parsed()) {
      const auto files = katoforge::cli::cache_manage(cache_dir, action, cache_entries(primes, max_level));
      if (json) {
        Json j;
        j["op"] = "cache";
        j["action"] = action;
        j["files"] = files;
        std::cout << j.dump() << '\n';
      } else {
        for (const auto& f : files) std::cout << action << ' ' << f << '\n';
        std::cout << action << ": " << files.size() << " file(s)\n";
      }
      return 0;
    }
    if (self->parsed()) {
      const auto rep = katoforge::cli::selftest(seed, rounds);
      if (json) {
        Json j;
        j["op"] = "selftest";
        j["seed"] = seed;
        j["passed"] = rep.passed;
        j["failures"] = rep.failures;
        std::cout << j.dump() << '\n';
      } else {
        for (const auto& f : rep.failures) std::cout << "FAIL " << f << '\n';
        std::cout << "selftest: " << rep.passed << " passed, " << rep.failures.size() << " failed\n";
      }
      return rep.failures.empty() ? 0 : 1;
    }
  } catch (const katoforge::Error& e) {
    if (json) {
      Json j;
      j["op"] = "error";
      j["kind"] = e.kind();
      j["message"] = e.what();
      std::cout << j.dump() << '\n';
    } else {
      std::cerr << e.kind() << ": " << e.what() << '\n';
    }
    return 1;
  }

  katoforge::cli::Options opt;
  opt.json = json;
  opt.keep_going = keep_going;
  opt.precision = precision;
  katoforge::cli::Session session(opt);
  if (script.empty()) return session.run_script(std::cin, std::cout, std::cerr);
  std::ifstream in(script);
  if (!in) {
    std::cerr << "IoError: cannot open " << script << '\n';
    return 1;
  }
  return session.run_script(in, std::cout, std::cerr);
}
