#include "virgeo/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace virgeo::io {

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json to_json(const PeriodicField& f) {
  Json modes = Json::array();
  for (int k = 0; k <= f.band(); ++k) modes.push_back({f.mode(k).real(), f.mode(k).imag()});
  return Json{{"band", f.band()}, {"modes", modes}};
}

Json to_json(const VirasoroElement& x) { return Json{{"h", to_json(x.h)}, {"a", x.a}}; }

Json to_json(const CircleDiffeo& phi) {
  return Json{{"displacement", to_json(phi.displacement())}, {"grid", phi.grid().node_count}};
}

PeriodicField field_from_json(const Json& j) {
  const int band = j.at("band").get<int>();
  const Json& modes = j.at("modes");
  if (band < 0 || modes.size() != static_cast<std::size_t>(band) + 1)
    throw std::invalid_argument("field JSON: 'modes' must hold band + 1 entries");
  PeriodicField::ModeVector m(band + 1);
  for (int k = 0; k <= band; ++k) {
    const Json& c = modes.at(k);
    if (!c.is_array() || c.size() != 2) throw std::invalid_argument("field JSON: each mode is [re, im]");
    m(k) = {c.at(0).get<double>(), c.at(1).get<double>()};
  }
  return PeriodicField(std::move(m));
}

VirasoroElement element_from_json(const Json& j) { return {field_from_json(j.at("h")), j.at("a").get<double>()}; }

CircleDiffeo diffeo_from_json(const Json& j) {
  const int grid = j.contains("grid") ? j.at("grid").get<int>() : kDefaultDiffeoGrid;
  return CircleDiffeo(field_from_json(j.at("displacement")), GridSpec{grid});
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
    : path_(path), width_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) buffer_ += ',';
    buffer_ += header[i];
  }
  buffer_ += '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != width_) throw std::logic_error("CSV row width does not match the header");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) buffer_ += ',';
    buffer_ += format_number(values[i]);
  }
  buffer_ += '\n';
}

void CsvWriter::close() {
  if (closed_) return;
  closed_ = true;
  write_text(path_, buffer_);
}

CsvWriter::~CsvWriter() {
  try {
    close();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "virgeo: %s\n", e.what());
  }
}

void write_field_csv(const std::filesystem::path& path, const PeriodicField& f, GridSpec grid) {
  const Eigen::VectorXd v = sample(f, grid);
  CsvWriter csv(path, {"x", "value"});
  for (int j = 0; j < grid.node_count; ++j) csv.row({grid.node(j), v(j)});
  csv.close();
}

void write_monitor_csv(const std::filesystem::path& path, const RunRecord& rec) {
  std::vector<std::string> header{"t"};
  header.insert(header.end(), rec.names.begin(), rec.names.end());
  CsvWriter csv(path, header);
  for (std::size_t i = 0; i < rec.times.size(); ++i) {
    std::vector<double> row{rec.times[i]};
    for (const auto& s : rec.series) row.push_back(s[i]);
    csv.row(row);
  }
  csv.close();
}

void write_snapshot_csv(const std::filesystem::path& path, const std::vector<Snapshot>& snaps, GridSpec grid,
                        const std::string& value_name) {
  CsvWriter csv(path, {"t", "x", value_name});
  for (const auto& s : snaps) {
    const Eigen::VectorXd v = sample(s.field, grid);
    for (int j = 0; j < grid.node_count; ++j) csv.row({s.t, grid.node(j), v(j)});
  }
  csv.close();
}

void write_curve_csv(const std::filesystem::path& path, const std::vector<double>& times,
                     const std::vector<PeriodicField>& displacements, GridSpec grid) {
  CsvWriter csv(path, {"t", "x", "phi(x)"});
  for (std::size_t i = 0; i < times.size(); ++i) {
    const Eigen::VectorXd v = sample(displacements[i], grid);
    for (int j = 0; j < grid.node_count; ++j) csv.row({times[i], grid.node(j), grid.node(j) + v(j)});
  }
  csv.close();
}

void write_jacobi_csv(const std::filesystem::path& path, const std::vector<JacobiRow>& rows) {
  CsvWriter csv(path, {"t", "sigma", "B1", "b_closed_form", "b_integrated", "norm_y"});
  for (const auto& r : rows) csv.row({r.t, r.sigma, r.b1, r.b_closed_form, r.b_integrated, r.norm_y});
  csv.close();
}

void write_sectional_csv(const std::filesystem::path& path, const std::vector<SectionalRow>& rows) {
  CsvWriter csv(path, {"a1", "a2", "sectional"});
  for (const auto& r : rows) csv.row({r.a1, r.a2, r.sectional});
  csv.close();
}

void write_json(const std::filesystem::path& path, const Json& j) { write_text(path, j.dump(2) + "\n"); }

void write_manifest(const std::filesystem::path& path, const std::string& command, const Json& parameters,
                    const std::vector<std::string>& outputs, const Json& extra) {
  Json m{{"command", command}, {"version", VIRGEO_VERSION}, {"parameters", parameters}, {"outputs", outputs}};
  for (auto it = extra.begin(); it != extra.end(); ++it) m[it.key()] = it.value();
  write_json(path, m);
}

}  // namespace virgeo::io
