#ifndef VIRGEO_IO_HPP
#define VIRGEO_IO_HPP

// JSON and CSV exchange formats. Numbers are written with %.17g so output is
// byte-identical for identical inputs.
//
//   field      {"band": N, "modes": [[re, im], ...]}   modes k = 0..N
//   element    {"h": <field>, "a": a}
//   diffeo     {"displacement": <field>, "grid": M}

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "virgeo/flow.hpp"
#include "virgeo/group.hpp"
#include "virgeo/jacobi.hpp"

namespace virgeo::io {

using Json = nlohmann::ordered_json;

Json to_json(const PeriodicField& f);
Json to_json(const VirasoroElement& x);
Json to_json(const CircleDiffeo& phi);

PeriodicField field_from_json(const Json& j);
VirasoroElement element_from_json(const Json& j);
CircleDiffeo diffeo_from_json(const Json& j);

/// %.17g
std::string format_number(double v);

/// Buffers rows; close() writes the file and throws on I/O failure. The
/// destructor closes if needed, reporting errors to stderr.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);
  ~CsvWriter();
  CsvWriter(const CsvWriter&) = delete;
  CsvWriter& operator=(const CsvWriter&) = delete;

  void row(const std::vector<double>& values);
  void close();

 private:
  bool closed_ = false;
  std::filesystem::path path_;
  std::string buffer_;
  std::size_t width_;
};

/// x,value on the grid
void write_field_csv(const std::filesystem::path& path, const PeriodicField& f, GridSpec grid);

/// t,<monitor names...>
void write_monitor_csv(const std::filesystem::path& path, const RunRecord& rec);

/// t,x,u for every snapshot
void write_snapshot_csv(const std::filesystem::path& path, const std::vector<Snapshot>& snaps, GridSpec grid,
                        const std::string& value_name = "u");

/// t,x,phi(x) for every sample of a group curve (phi = x + displacement)
void write_curve_csv(const std::filesystem::path& path, const std::vector<double>& times,
                     const std::vector<PeriodicField>& displacements, GridSpec grid);

struct JacobiRow {
  double t, sigma, b1, b_closed_form, b_integrated, norm_y;
};

/// t,sigma,B1,b_closed_form,b_integrated,norm_y
void write_jacobi_csv(const std::filesystem::path& path, const std::vector<JacobiRow>& rows);

/// a1,a2,sectional
struct SectionalRow {
  double a1, a2, sectional;
};
void write_sectional_csv(const std::filesystem::path& path, const std::vector<SectionalRow>& rows);

/// Writes {"command": ..., "version": ..., "parameters": {...}, "outputs": [...], ...extra}.
void write_manifest(const std::filesystem::path& path, const std::string& command, const Json& parameters,
                    const std::vector<std::string>& outputs, const Json& extra = Json::object());

void write_json(const std::filesystem::path& path, const Json& j);

}  // namespace virgeo::io

#endif  // VIRGEO_IO_HPP
