#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace darkpassage {

struct SweepAxis {
  std::string name;
  std::vector<double> values;
};

/// Cartesian grid; rows enumerate points lexicographically with the last
/// axis varying fastest.
struct SweepGrid {
  std::vector<SweepAxis> axes;

  /// Throws ValidationError for no axes, empty axes or duplicate names.
  void validate() const;
  std::size_t size() const;
  std::vector<double> point(std::size_t row) const;
};

using NamedValues = std::vector<std::pair<std::string, double>>;

struct SweepRow {
  std::vector<double> inputs;
  std::string status;  // "ok", "validation_error", "numerical_error" or "error"
  std::string message;
  NamedValues values;
  bool ok() const { return status == "ok"; }
};

struct SweepTable {
  std::vector<std::string> axis_names;
  std::vector<std::string> value_names;  // union of row value names, first-seen order
  std::vector<SweepRow> rows;

  std::size_t succeeded() const;
};

/// Evaluates one grid point. Exceptions mark the row as failed.
using SweepRunner = std::function<NamedValues(const std::vector<double>& point)>;

/// Runs every grid point on up to `threads` workers. Output order and
/// content do not depend on the thread count.
SweepTable run_sweep(const SweepGrid& grid, const SweepRunner& runner, std::size_t threads);

/// DARKPASSAGE_THREADS if set to a positive integer, else the hardware concurrency.
std::size_t sweep_threads_from_env();

}  // namespace darkpassage
