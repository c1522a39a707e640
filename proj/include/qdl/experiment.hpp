#pragma once

// Experiment configuration and the table builders behind the command line.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qdl/bayes_learn.hpp"
#include "qdl/embedding.hpp"
#include "qdl/function_basis.hpp"
#include "qdl/grid.hpp"
#include "qdl/target_sampling.hpp"

namespace qdl {

// Flat `key = value` configuration. Keys and defaults:
//
//   interval_lo  = 0
//   interval_hi  = 3
//   basis        = daubechies4        (haar | daubechies4)
//   scale_n      = 2
//   weights      = projection         (projection | comma-separated alphas,
//                                      one per interior translate)
//   target_a     = 2
//   target_b     = 5
//   n_samples    = 300
//   seed         = 1
//   grid_cells   = 49152              (2^12 cells per unit of the mother
//                                      wavelet coordinate at n = 2 on [0, 3])
//   output_path  =                    (empty: standard output)
//
// '#' starts a comment. Unknown keys and malformed values are rejected.
struct ExperimentConfig {
  Interval interval{0.0, 3.0};
  Family family = Family::Daubechies4;
  int scale_n = 2;
  std::vector<double> weights;  // empty: projection
  double target_a = 2.0;
  double target_b = 5.0;
  std::size_t n_samples = 300;
  std::uint64_t seed = 1;
  std::size_t grid_cells = 49152;
  std::string output_path;

  static ExperimentConfig parse(std::istream& in);
  static ExperimentConfig parse_string(const std::string& text);
  static ExperimentConfig load(const std::string& path);

  // Applies one `key = value` assignment; throws std::invalid_argument.
  void set(const std::string& key, const std::string& value);
  void validate() const;
  std::string to_text() const;

  FunctionBasis basis() const;
  EmbeddingOperator embedding() const;
  BetaTarget target() const;
  Grid grid() const;
};

enum class Figure { Fig2a, Fig2b, Fig3a, Fig3b };

Figure figure_from_string(const std::string& name);
std::string to_string(Figure figure);

// Column-oriented table; column 0 is the grid abscissa.
struct Table {
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;

  std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
  const std::vector<double>& column(const std::string& name) const;
  // Header line then comma-separated rows at 17 significant digits.
  std::string to_csv() const;
};

Table reproduce(Figure figure, const ExperimentConfig& config);

// Kernel-trick MAP density of user samples and its normalized ratio.
Table estimate(const SampleSet& samples, const ExperimentConfig& config);

}  // namespace qdl
