#include "pauli/output.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "pauli/errors.hpp"

namespace pauli {

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return out;
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string series_row(const SeriesRecord& r) {
  return format_number(r.time) + ',' + format_number(r.mass) + ',' + format_number(r.l2_u1) +
         ',' + format_number(r.l2_u2) + ',' + format_number(r.alpha) + ',' +
         format_number(r.energy);
}

SeriesWriter::SeriesWriter(const std::filesystem::path& path) : out_(open_for_write(path)) {
  out_ << kSeriesHeader << '\n';
  out_.flush();
}

void SeriesWriter::write(const SeriesRecord& record) {
  out_ << series_row(record) << '\n';
  out_.flush();
}

void write_vtk_snapshot(const std::filesystem::path& path, const SpinorField& state,
                        const Grid& grid, double time) {
  check_state(state, grid, "write_vtk_snapshot");
  if (state.representation != Representation::physical) {
    throw StateError("write_vtk_snapshot: state must be in physical representation");
  }
  std::ofstream out = open_for_write(path);
  const Index3& n = grid.counts();
  const Vec3& d = grid.spacings();
  out << "# vtk DataFile Version 3.0\n";
  out << "pauli spinor magnitudes t=" << format_number(time) << '\n';
  out << "ASCII\n";
  out << "DATASET STRUCTURED_POINTS\n";
  out << "DIMENSIONS " << n[0] << ' ' << n[1] << ' ' << n[2] << '\n';
  out << "ORIGIN 0 0 0\n";
  out << "SPACING " << format_number(d[0]) << ' ' << format_number(d[1]) << ' '
      << format_number(d[2]) << '\n';
  out << "POINT_DATA " << grid.size() << '\n';
  for (int c = 0; c < 2; ++c) {
    out << "SCALARS abs_u" << (c + 1) << " double 1\n";
    out << "LOOKUP_TABLE default\n";
    const auto& u = state.component(c);
    for (std::size_t i = 0; i < u.size(); ++i) {
      out << format_number(std::abs(u[i])) << ((i + 1) % n[0] == 0 ? '\n' : ' ');
    }
  }
}

void write_error_table(const std::filesystem::path& path, const std::string& header,
                       const std::vector<std::vector<double>>& rows,
                       std::optional<double> slope) {
  std::ofstream out = open_for_write(path);
  out << header << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << format_number(row[i]);
    }
    out << '\n';
  }
  out << "# slope=" << (slope ? format_number(*slope) : std::string("nan")) << '\n';
}

}  // namespace pauli
