#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>

#include "cli.hpp"

namespace pbtlab::cli {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string to_csv(const Table& table, const std::optional<std::string>& timestamp) {
  std::string out;
  if (timestamp) out += "# generated_at=" + *timestamp + "\n";
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out += ',';
    out += table.columns[c];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      if (row[c]) out += format_double(*row[c]);
    }
    out += '\n';
  }
  return out;
}

nlohmann::json to_json(const Table& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json r = nlohmann::json::object();
    for (std::size_t c = 0; c < row.size(); ++c) {
      r[table.columns[c]] = row[c] ? nlohmann::json(*row[c]) : nlohmann::json(nullptr);
    }
    rows.push_back(std::move(r));
  }
  return {{"columns", table.columns}, {"rows", rows}};
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!std::cout) throw IoError("failed writing to stdout");
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open " + path + " for writing");
  f << text;
  f.close();
  if (!f) throw IoError("failed writing " + path);
}

void write_table(const Table& table, const SweepConfig& config) {
  const std::optional<std::string> stamp =
      config.timestamp ? std::optional<std::string>(utc_timestamp()) : std::nullopt;
  if (config.format == Format::json) {
    nlohmann::json doc = to_json(table);
    doc["config"] = config.to_json();
    if (stamp) doc["generated_at"] = *stamp;
    write_text(config.output_path, doc.dump(2) + "\n");
    return;
  }
  write_text(config.output_path, to_csv(table, stamp));
  if (!config.output_path.empty() && config.output_path != "-") {
    nlohmann::json sidecar = {{"config", config.to_json()}, {"columns", table.columns},
                              {"rows", table.rows.size()}};
    if (stamp) sidecar["generated_at"] = *stamp;
    write_text(config.output_path + ".json", sidecar.dump(2) + "\n");
  }
}

}  // namespace pbtlab::cli
