#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "darkpassage/cli.hpp"

namespace darkpassage::cli {

std::string format_number(double v) {
  if (v == 0.0) return "0";  // folds -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

namespace {

void line(std::ostringstream& os, const std::string& key, const std::string& value) {
  std::string v = value;
  std::replace(v.begin(), v.end(), '\n', ' ');
  os << key << '=' << v << '\n';
}

void line(std::ostringstream& os, const std::string& key, double value) { line(os, key, format_number(value)); }

}  // namespace

std::string format_summary(const ExperimentConfig& config, const RunReport& report) {
  const ExperimentParams& e = config.params;
  const TransferParams& t = e.transfer;
  std::ostringstream os;
  line(os, "schema_version", std::to_string(kSchemaVersion));
  line(os, "experiment", report.experiment);
  if (e.kind != ExperimentKind::Darkstate) {
    line(os, "param_G", t.G);
    line(os, "param_sigma", t.sigma);
    line(os, "param_delay", t.delay_value());
    line(os, "param_pad", t.pad_value());
    line(os, "param_Gsigma", t.G * t.sigma);
    line(os, "param_tolerance", t.tolerance);
    line(os, "param_qubit_alpha_re", e.qubit.alpha().real());
    line(os, "param_qubit_alpha_im", e.qubit.alpha().imag());
    line(os, "param_qubit_beta_re", e.qubit.beta().real());
    line(os, "param_qubit_beta_im", e.qubit.beta().imag());
  }
  for (const auto& [k, v] : report_scalars(report)) line(os, k, v);
  line(os, "warning_count", std::to_string(report.warnings.size()));
  for (std::size_t i = 0; i < report.warnings.size(); ++i) line(os, "warning_" + std::to_string(i + 1), report.warnings[i]);
  return os.str();
}

std::string format_trace_csv(const RunReport& report) {
  if (!report.trajectory) throw ValidationError("experiment '" + report.experiment + "' produces no trace");
  const Trajectory& tr = *report.trajectory;
  std::ostringstream os;
  const std::size_t sites = tr.populations.empty() ? 0 : tr.populations.front().size();
  os << "t";
  for (std::size_t s = 0; s < sites; ++s) os << ",site_" << s + 1 << "_down";
  os << ",norm,F_t,gamma_t\n";
  for (std::size_t k = 0; k < tr.times.size(); ++k) {
    const double t = tr.times[k];
    // the pulse pair carrying the most weight at t
    double F = 0.0, gamma = 0.0;
    for (const auto& pair : report.pulses) {
      const double K = pair.pump(t), L = pair.stokes(t);
      const double f = std::hypot(K, L);
      if (f > F) {
        F = f;
        gamma = std::atan2(K, L);
      }
    }
    os << format_number(t);
    for (double p : tr.populations[k]) os << ',' << format_number(p);
    os << ',' << format_number(tr.norms[k]) << ',' << format_number(F) << ',' << format_number(gamma) << '\n';
  }
  return os.str();
}

std::string format_table_csv(const SweepTable& table) {
  std::ostringstream os;
  bool first = true;
  auto cell = [&](const std::string& s) {
    if (!first) os << ',';
    os << csv_field(s);
    first = false;
  };
  for (const auto& a : table.axis_names) cell(a);
  cell("status");
  cell("message");
  for (const auto& v : table.value_names) cell(v);
  os << '\n';
  for (const auto& row : table.rows) {
    first = true;
    for (double x : row.inputs) cell(format_number(x));
    cell(row.status);
    cell(row.message);
    for (const auto& name : table.value_names) {
      const auto it = std::find_if(row.values.begin(), row.values.end(), [&](const auto& kv) { return kv.first == name; });
      cell(it == row.values.end() ? std::string() : format_number(it->second));
    }
    os << '\n';
  }
  return os.str();
}

void atomic_write(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) {
      out.close();
      std::error_code ec;
      fs::remove(tmp, ec);
      throw std::runtime_error("write failed for '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw std::runtime_error("cannot move output into place at '" + path + "'");
  }
}

}  // namespace darkpassage::cli
