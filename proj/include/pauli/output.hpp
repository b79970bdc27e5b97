#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

#include "pauli/observables.hpp"

namespace pauli {

inline constexpr const char* kSeriesHeader = "t,mass,l2_u1,l2_u2,alpha,energy";

/// Streams SeriesRecord rows to a CSV file, flushing after every row so a
/// run that aborts keeps the rows written so far.
class SeriesWriter {
 public:
  explicit SeriesWriter(const std::filesystem::path& path);
  void write(const SeriesRecord& record);

 private:
  std::ofstream out_;
};

/// Shortest round-trip decimal form of a double.
std::string format_number(double v);

std::string series_row(const SeriesRecord& record);

/// Legacy VTK ASCII STRUCTURED_POINTS file with point scalars abs_u1 and
/// abs_u2, x1-fastest.
void write_vtk_snapshot(const std::filesystem::path& path, const SpinorField& state,
                        const Grid& grid, double time);

/// CSV error table: header line, one row per entry, then "# slope=<v>"
/// (or "# slope=nan" when no fit is available).
void write_error_table(const std::filesystem::path& path, const std::string& header,
                       const std::vector<std::vector<double>>& rows, std::optional<double> slope);

}  // namespace pauli
