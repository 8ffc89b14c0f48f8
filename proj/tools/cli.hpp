#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rmf/json.hpp"
#include "rmf/quadrature.hpp"
#include "rmf/sampler.hpp"

namespace rmf::cli {

inline constexpr const char* kToolName = "rmf_lab";
inline constexpr const char* kVersion = "0.1.0";

enum class Format { Json, Jsonl, Csv };

// Union of every subcommand's flags; each command reads only its own.
struct Options {
  std::vector<std::uint64_t> x{1000000};
  double y = 2.0;
  double t = 0.0;
  double cutoff = 1000.0;
  std::uint64_t seed = 1;
  std::uint64_t stream = 0;
  std::uint64_t trials = 100;
  Model model = Model::Steinhaus;
  int truncation_j = -1;
  QuadratureSpec quad{};
  double B = 0.0;  // 0: x^{1/4}
  double W = 0.0;  // 0: max(4, (log log x)^2)
  std::uint64_t n_large = 10000;
  std::vector<double> q_list{0.5, 1.0, 1.5};
  std::vector<double> tail_thresholds{1.0, 1.5, 2.0, 3.0};
  bool with_v1 = false;
  bool with_v5 = false;
};

struct Invocation {
  std::string command;  // "mc", "verify rough", ...
  Options opts;
  std::optional<std::string> out_path;
  Format format = Format::Json;
  unsigned threads = 0;
  bool strict = false;
};

// Thrown by parse_args. exit_code 0 means help/version text was requested.
class UsageError : public std::runtime_error {
 public:
  UsageError(const std::string& msg, int exit_code = 2)
      : std::runtime_error(msg), exit_code_(exit_code) {}
  int exit_code() const noexcept { return exit_code_; }

 private:
  int exit_code_;
};

Invocation parse_args(const std::vector<std::string>& args);

/// Resolved config of the invocation's command; what --config reads back.
Json resolved_config(const Invocation& inv);

/// Overwrites the command and options of `inv` from an emitted document's meta.
void apply_config(Invocation& inv, const Json& meta);

/// Executes a parsed invocation. Returns 0, 1 (computational failure) or 2.
int run(const Invocation& inv, std::ostream& out, std::ostream& err);

/// parse_args + run, mapping usage errors to exit code 2.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rmf::cli
