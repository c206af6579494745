#pragma once

// Registry binding each classification result to an executable check over a
// fixed universe size, and the machine-readable report of a run.

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace conlat {

enum class Status { pass, fail, skipped };

std::string_view to_string(Status s);

struct RunConfig {
  int n = 4;
  unsigned workers = 1;
  // Largest n for checks over equivalences, and for checks that build the
  // lattice of quasiorder lattices.
  int max_n_equivalence = 6;
  int max_n_quasiorder = 4;
  // Drives the sampled checks; everything else is exhaustive.
  std::uint64_t seed = 1;
  // Report per-check wall time. Off by default so that reports are
  // byte-identical across runs.
  bool timings = false;
};

struct CheckResult {
  std::string id;
  int n = 0;
  Status status = Status::skipped;
  // pass: search-space size and witnesses; fail: a counterexample that can be
  // replayed through the library; skipped: the reason.
  nlohmann::json details = nlohmann::json::object();
  double seconds = 0;
};

// In registry order.
std::vector<std::string> const& check_ids();

class Verifier {
 public:
  explicit Verifier(RunConfig config);
  ~Verifier();
  Verifier(Verifier const&) = delete;
  Verifier& operator=(Verifier const&) = delete;

  RunConfig const& config() const noexcept;

  // Throws UnknownCheckId for an id outside the registry.
  CheckResult run(std::string_view id);
  std::vector<CheckResult> run(std::vector<std::string> const& ids);

  // Caches shared by the checks; defined with them.
  struct State;

 private:
  std::unique_ptr<State> state_;
};

// {"schema": 1, "n", "seed", "caps", "checks": [...], "summary"}. The worker
// count is deliberately absent: it must not change the report.
nlohmann::json report_json(RunConfig const& config, std::vector<CheckResult> const& results);

// 0 when every check passed or was skipped, 1 otherwise.
int exit_code(std::vector<CheckResult> const& results);

}  // namespace conlat
