#include "qdl/experiment.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace qdl {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
  T v{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) throw std::invalid_argument("config: bad value for '" + key + "': '" + text + "'");
  return v;
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

ExperimentConfig ExperimentConfig::parse(std::istream& in) {
  ExperimentConfig cfg;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    try {
      cfg.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig ExperimentConfig::parse_string(const std::string& text) {
  std::istringstream in(text);
  return parse(in);
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  return parse(in);
}

void ExperimentConfig::set(const std::string& key, const std::string& value) {
  if (key == "interval_lo") {
    interval.lo = parse_number<double>(key, value);
  } else if (key == "interval_hi") {
    interval.hi = parse_number<double>(key, value);
  } else if (key == "basis") {
    family = family_from_string(value);
  } else if (key == "scale_n") {
    scale_n = parse_number<int>(key, value);
  } else if (key == "weights") {
    weights.clear();
    if (value != "projection") {
      std::stringstream ss(value);
      std::string item;
      while (std::getline(ss, item, ',')) weights.push_back(parse_number<double>(key, trim(item)));
      if (weights.empty()) throw std::invalid_argument("config: 'weights' needs 'projection' or a list of numbers");
    }
  } else if (key == "target_a") {
    target_a = parse_number<double>(key, value);
  } else if (key == "target_b") {
    target_b = parse_number<double>(key, value);
  } else if (key == "n_samples") {
    n_samples = parse_number<std::size_t>(key, value);
  } else if (key == "seed") {
    seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "grid_cells") {
    grid_cells = parse_number<std::size_t>(key, value);
  } else if (key == "output_path") {
    output_path = value;
  } else {
    throw std::invalid_argument("config: unknown key '" + key + "'");
  }
}

void ExperimentConfig::validate() const {
  if (!(interval.lo < interval.hi) || !std::isfinite(interval.lo) || !std::isfinite(interval.hi)) {
    throw std::invalid_argument("config: interval_lo must be < interval_hi");
  }
  if (scale_n < 0 || scale_n > 20) throw std::invalid_argument("config: scale_n must lie in [0, 20]");
  if (!(target_a > 0.0) || !(target_b > 0.0)) throw std::invalid_argument("config: target_a and target_b must be > 0");
  if (n_samples == 0) throw std::invalid_argument("config: n_samples must be >= 1");
  if (grid_cells < 2) throw std::invalid_argument("config: grid_cells must be >= 2");
  const FunctionBasis b = basis();
  if (b.interior_translates().empty()) {
    throw std::invalid_argument("config: no basis function fits inside the interval at this scale");
  }
  (void)embedding();
}

std::string ExperimentConfig::to_text() const {
  std::ostringstream out;
  out << "interval_lo = " << fmt17(interval.lo) << "\n";
  out << "interval_hi = " << fmt17(interval.hi) << "\n";
  out << "basis = " << to_string(family) << "\n";
  out << "scale_n = " << scale_n << "\n";
  out << "weights = ";
  if (weights.empty()) {
    out << "projection";
  } else {
    for (std::size_t i = 0; i < weights.size(); ++i) out << (i ? "," : "") << fmt17(weights[i]);
  }
  out << "\n";
  out << "target_a = " << fmt17(target_a) << "\n";
  out << "target_b = " << fmt17(target_b) << "\n";
  out << "n_samples = " << n_samples << "\n";
  out << "seed = " << seed << "\n";
  out << "grid_cells = " << grid_cells << "\n";
  out << "output_path = " << output_path << "\n";
  return out.str();
}

FunctionBasis ExperimentConfig::basis() const { return FunctionBasis::covering(family, scale_n, interval); }

EmbeddingOperator ExperimentConfig::embedding() const {
  const FunctionBasis b = basis();
  if (weights.empty()) return EmbeddingOperator::projection(b);
  return EmbeddingOperator::weighted(b, weights);
}

BetaTarget ExperimentConfig::target() const { return BetaTarget(target_a, target_b, interval); }

Grid ExperimentConfig::grid() const { return Grid(interval, grid_cells); }

Figure figure_from_string(const std::string& name) {
  if (name == "fig2a") return Figure::Fig2a;
  if (name == "fig2b") return Figure::Fig2b;
  if (name == "fig3a") return Figure::Fig3a;
  if (name == "fig3b") return Figure::Fig3b;
  throw std::invalid_argument("unknown figure '" + name + "' (expected fig2a, fig2b, fig3a or fig3b)");
}

std::string to_string(Figure figure) {
  switch (figure) {
    case Figure::Fig2a: return "fig2a";
    case Figure::Fig2b: return "fig2b";
    case Figure::Fig3a: return "fig3a";
    case Figure::Fig3b: return "fig3b";
  }
  return "unknown";
}

const std::vector<double>& Table::column(const std::string& name) const {
  for (std::size_t c = 0; c < names.size(); ++c)
    if (names[c] == name) return columns[c];
  throw std::out_of_range("Table: no column named '" + name + "'");
}

std::string Table::to_csv() const {
  std::string out;
  for (std::size_t c = 0; c < names.size(); ++c) {
    if (c) out += ',';
    out += names[c];
  }
  out += '\n';
  char buf[64];
  for (std::size_t r = 0; r < rows(); ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (c) out += ',';
      std::snprintf(buf, sizeof buf, "%.17g", columns[c][r]);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

Table reproduce(Figure figure, const ExperimentConfig& config) {
  config.validate();
  const Grid grid = config.grid();
  const FunctionBasis basis = config.basis();
  const EmbeddingOperator a = config.embedding();
  const BetaTarget target = config.target();

  Table t;
  t.names.push_back("s");
  t.columns.push_back(grid.points());

  switch (figure) {
    case Figure::Fig2a: {
      for (int k : basis.translates()) {
        t.names.push_back("phi_k" + std::to_string(k));
        t.columns.push_back(sample_on(grid, [&](double s) { return basis.father(k, s); }));
      }
      t.names.push_back("kernel_diag");
      t.columns.push_back(kernel_diag_on(a, grid));
      break;
    }
    case Figure::Fig2b: {
      const DensityCurve zeta = target.on(grid);
      t.names.push_back("zeta");
      t.columns.push_back(zeta.values);
      t.names.push_back("wavelet_approx");
      t.columns.push_back(wavelet_approximation(zeta.values, basis, grid));
      break;
    }
    case Figure::Fig3a:
    case Figure::Fig3b: {
      const DensityCurve zeta = target.on(grid);
      const SampleSet samples = sample(target, config.n_samples, config.seed);
      DensityCurve exact = embedded_density_exact(a, zeta);
      DensityCurve map = embedded_density_map(a, samples, grid);
      t.names.push_back("zeta");
      t.columns.push_back(zeta.values);
      if (figure == Figure::Fig3a) {
        t.names.push_back("embedded_exact");
        t.columns.push_back(std::move(exact.values));
        t.names.push_back("embedded_map");
        t.columns.push_back(std::move(map.values));
      } else {
        t.names.push_back("ratio_exact");
        t.columns.push_back(normalized_ratio(exact, a).values);
        t.names.push_back("ratio_map");
        t.columns.push_back(normalized_ratio(map, a).values);
      }
      break;
    }
  }
  return t;
}

Table estimate(const SampleSet& samples, const ExperimentConfig& config) {
  config.validate();
  if (samples.interval() != config.interval) throw std::invalid_argument("estimate: sample interval differs from config");
  const Grid grid = config.grid();
  const EmbeddingOperator a = config.embedding();
  const DensityCurve map = embedded_density_map(a, samples, grid);
  Table t;
  t.names = {"s", "embedded_map", "ratio_map"};
  t.columns.push_back(grid.points());
  t.columns.push_back(map.values);
  t.columns.push_back(normalized_ratio(map, a).values);
  return t;
}

}  // namespace qdl
