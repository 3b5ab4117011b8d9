#include "darkpassage/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <set>
#include <string>
#include <thread>

#include "darkpassage/types.hpp"

namespace darkpassage {

void SweepGrid::validate() const {
  if (axes.empty()) throw ValidationError("sweep: no axes");
  std::set<std::string> seen;
  for (const auto& a : axes) {
    if (a.values.empty()) throw ValidationError("sweep: axis '" + a.name + "' is empty");
    if (!seen.insert(a.name).second) throw ValidationError("sweep: duplicate axis '" + a.name + "'");
  }
}

std::size_t SweepGrid::size() const {
  std::size_t n = 1;
  for (const auto& a : axes) n *= a.values.size();
  return axes.empty() ? 0 : n;
}

std::vector<double> SweepGrid::point(std::size_t row) const {
  std::vector<double> p(axes.size());
  for (std::size_t i = axes.size(); i-- > 0;) {
    const std::size_t len = axes[i].values.size();
    p[i] = axes[i].values[row % len];
    row /= len;
  }
  return p;
}

std::size_t SweepTable::succeeded() const {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const SweepRow& r) { return r.ok(); }));
}

SweepTable run_sweep(const SweepGrid& grid, const SweepRunner& runner, std::size_t threads) {
  grid.validate();
  SweepTable table;
  for (const auto& a : grid.axes) table.axis_names.push_back(a.name);
  const std::size_t n = grid.size();
  table.rows.resize(n);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      SweepRow& row = table.rows[i];
      row.inputs = grid.point(i);
      try {
        row.values = runner(row.inputs);
        row.status = "ok";
      } catch (const ValidationError& e) {
        row.status = "validation_error";
        row.message = e.what();
      } catch (const NumericalError& e) {
        row.status = "numerical_error";
        row.message = e.what();
      } catch (const std::exception& e) {
        row.status = "error";
        row.message = e.what();
      }
    }
  };
  threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(n, 1));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  for (const auto& row : table.rows)
    for (const auto& [name, v] : row.values)
      if (std::find(table.value_names.begin(), table.value_names.end(), name) == table.value_names.end())
        table.value_names.push_back(name);
  return table;
}

std::size_t sweep_threads_from_env() {
  if (const char* s = std::getenv("DARKPASSAGE_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(s, &end, 10);
    if (end != s && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

}  // namespace darkpassage
