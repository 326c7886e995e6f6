#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace delsumm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvariant = 1;
inline constexpr int kExitBadInput = 2;

// Raised when a solver or baseline output breaks a constraint it must keep.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Raised for unusable command-line configuration (missing flags, bad paths).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string corpus;
  std::vector<std::string> references;  // one JSONL file per annotator
  std::string lexicons_dir;              // empty: built-in lexicons
  std::string profile = "india";
  std::optional<int> length;
  std::vector<std::string> methods = {"delsumm", "luhn", "lexrank", "letsum"};
  std::vector<std::string> candidates;  // evaluate: summary directories or JSONL files
  double noise_rate = 0.15;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  std::string out;
  std::size_t node_budget = 1'000'000;
  double time_budget = 30.0;  // seconds
  bool dump_lp = false;
  std::size_t documents = 10;  // generate
};

// Each command writes its artifacts below config.out (created if needed),
// prints a deterministic report on `out`, diagnostics on `err`, and returns an
// exit status. Exceptions are mapped to status codes, never propagated.
int cmd_summarize(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_evaluate(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_compare(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_perturb(const RunConfig& config, std::ostream& out, std::ostream& err);

// Writes corpus.jsonl, references_<k>.jsonl and lexicons/ for a synthetic corpus.
int cmd_generate(const RunConfig& config, std::ostream& out, std::ostream& err);

// Writes through a temporary file and renames it into place.
void write_file_atomic(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

// doc_id made safe for use as a file name.
std::string file_stem(const std::string& doc_id);

}  // namespace delsumm::cli
