#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "congest/lb_graphs.hpp"
#include "congest/registry.hpp"

namespace congest {

// Graph sources shared by the CLI and the batch driver.  `seed` feeds
// randomized generators (gnp, maxm-lb, random bit-vectors); deterministic
// families ignore it unless randomize-ids/randomize-ports is set.
PortGraph build_graph(const std::string& generator, const Params& params,
                      std::uint64_t seed);

// Lower-bound instance construction by family name (mvc-exact, mds-exact,
// mds-crossing, mds-fixed, mvc-base, maxis-base, maxm-lb).  Bit-vector
// params accept hex, "ones", "zeros", "random" or "random-intersecting".
LbInstance build_instance(const std::string& family, const Params& params,
                          std::uint64_t seed);

struct ExperimentSpec {
  std::string name = "exp";
  std::string generator;  // generator name or "file"
  Params gen_params;
  std::string algorithm;
  Params algo_params;
  std::vector<std::uint64_t> seeds;
  long round_cap = 0;  // 0: registry default
  bool with_oracle = false;
  OracleGuard guard;
};

struct ResultRow {
  std::string name;
  std::uint64_t seed = 0;
  int n = 0;
  long m = 0;
  std::string params;  // self-describing, includes cfg=<hash>
  std::uint64_t messages = 0, bits = 0;
  long rounds = 0;
  long size = -1;
  long opt = -1;                 // -1: oracle not run
  double ratio = 0.0;            // size/opt, 0 when no oracle
  bool valid = false, failed = false;

  static std::string csv_header();
  std::string csv_row() const;
};

std::uint64_t spec_config_hash(const ExperimentSpec& spec);

// Runs every seed (workers > 1: seed-level parallelism; the row order and
// contents are identical to a serial run).
std::vector<ResultRow> run_experiment(const ExperimentSpec& spec,
                                      int workers = 1);

// Appends rows to a CSV file, writing the versioned header if the file is
// new or empty.
void write_rows_csv(const std::string& path,
                    const std::vector<ResultRow>& rows);

int worker_count_from_env();  // CONGEST_WORKERS, default 1

struct ScalingFit {
  double exponent = 0.0;  // least-squares slope of log msgs vs log n
  double coeff = 0.0;     // best multiplier for the named model curve
  std::string model;
  std::vector<std::array<double, 3>> points;  // n, messages, fitted
};

// Least-squares exponent fit of messages vs n on log-log axes; `model`
// in {"n", "n*log^2", "n^2", "n^3"} picks the reference curve for the
// fitted column.  Requires >= 3 distinct n values.
ScalingFit fit_scaling(const std::vector<std::pair<double, double>>& n_msgs,
                       const std::string& model);

// Reads (n, messages) pairs back from a results CSV (mean over rows that
// share n).
std::vector<std::pair<double, double>> scaling_points_from_csv(
    const std::string& path);

}  // namespace congest
