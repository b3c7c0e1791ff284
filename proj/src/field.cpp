#include "emwave/field.hpp"

#include <cmath>
#include <limits>

#include "emwave/csvnum.hpp"
#include "emwave/errors.hpp"

namespace emwave {

void GridSpec::validate() const {
  if (!(x_max > x_min) || !(y_max > y_min)) {
    fail(Errc::invalid_parameter, "grid extent must have positive span");
  }
  if (nx < 2 || ny < 2) {
    fail(Errc::invalid_parameter, "grid needs nx >= 2 and ny >= 2");
  }
}

GridSpec GridSpec::cover(const std::array<double, 4>& extent, int nx, int ny) {
  GridSpec g;
  g.x_min = extent[0];
  g.x_max = extent[1];
  g.y_min = extent[2];
  g.y_max = extent[3];
  g.nx = nx;
  g.ny = ny;
  g.validate();
  return g;
}

std::size_t ScalarField::count_valid() const {
  std::size_t n = 0;
  for (std::uint8_t m : mask) n += m;
  return n;
}

namespace detail {

double nearest_sample_dist2(double cx, double cy,
                            std::span<const SamplePoint> samples) {
  double best = std::numeric_limits<double>::infinity();
  for (const SamplePoint& s : samples) {
    double dx = cx - s.x, dy = cy - s.y;
    double d2 = dx * dx + dy * dy;
    if (d2 < best) best = d2;
  }
  return best;
}

double idw_cell(double cx, double cy, std::span<const SamplePoint> samples,
                double power) {
  constexpr double kCoincident2 = 1e-9 * 1e-9;
  double num = 0.0, den = 0.0;
  for (const SamplePoint& s : samples) {
    double dx = cx - s.x, dy = cy - s.y;
    double d2 = dx * dx + dy * dy;
    if (d2 < kCoincident2) return s.value;
    double w = (power == 2.0) ? 1.0 / d2 : 1.0 / std::pow(std::sqrt(d2), power);
    num += w * s.value;
    den += w;
  }
  return num / den;
}

}  // namespace detail

ScalarField interpolate_points(std::span<const SamplePoint> samples,
                               const GridSpec& grid, double power,
                               std::optional<double> max_radius) {
  grid.validate();
  if (samples.empty()) fail(Errc::empty_samples, "no samples to interpolate");
  if (!(power > 0.0)) fail(Errc::invalid_parameter, "IDW power must be > 0");
  if (max_radius && !(*max_radius > 0.0)) {
    fail(Errc::invalid_parameter, "max_radius must be > 0");
  }

  ScalarField field;
  field.grid = grid;
  field.values.assign(static_cast<std::size_t>(grid.nx) * grid.ny, 0.0);
  field.mask.assign(field.values.size(), 1);

  const double radius2 =
      max_radius ? (*max_radius) * (*max_radius) : std::numeric_limits<double>::infinity();

#pragma omp parallel for schedule(static)
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      double cx = grid.x(i), cy = grid.y(j);
      std::size_t c = field.idx(i, j);
      if (max_radius && detail::nearest_sample_dist2(cx, cy, samples) > radius2) {
        field.mask[c] = 0;
        field.values[c] = std::numeric_limits<double>::quiet_NaN();
        continue;
      }
      field.values[c] = detail::idw_cell(cx, cy, samples, power);
    }
  }
  return field;
}

ScalarField interpolate_field(const TdoaSamples& samples, const GridSpec& grid,
                              double power, std::optional<double> max_radius) {
  std::vector<SamplePoint> pts;
  pts.reserve(samples.entries.size());
  for (const TdoaEntry& e : samples.entries) pts.push_back({e.x, e.y, e.tdoa});
  return interpolate_points(pts, grid, power, max_radius);
}

void save_field_csv(const ScalarField& field, const std::string& path) {
  const GridSpec& g = field.grid;
  std::string out;
  out.reserve(field.values.size() * 14 + 96);
  out += format_int(g.nx) + "," + format_int(g.ny) + "\n";
  out += format_double(g.x_min) + "," + format_double(g.x_max) + "\n";
  out += format_double(g.y_min) + "," + format_double(g.y_max) + "\n";
  out += "masked_value=NaN\n";
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      if (i) out += ',';
      std::size_t c = field.idx(i, j);
      out += field.mask[c] ? format_double(field.values[c]) : "nan";
    }
    out += '\n';
  }
  write_text_file(path, out);
}

ScalarField load_field_csv(const std::string& path) {
  std::string text = read_text_file(path);
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    lines.emplace_back(text.data() + pos, eol - pos);
    pos = eol + 1;
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.size() < 5) fail(Errc::parse_error, path + ": truncated field file");

  auto dims = split_csv_line(lines[0]);
  auto xr = split_csv_line(lines[1]);
  auto yr = split_csv_line(lines[2]);
  if (dims.size() != 2 || xr.size() != 2 || yr.size() != 2 ||
      lines[3] != "masked_value=NaN") {
    fail(Errc::parse_error, path + ": malformed field header");
  }
  ScalarField field;
  field.grid.nx = static_cast<int>(parse_int(dims[0], path));
  field.grid.ny = static_cast<int>(parse_int(dims[1], path));
  field.grid.x_min = parse_double(xr[0], path);
  field.grid.x_max = parse_double(xr[1], path);
  field.grid.y_min = parse_double(yr[0], path);
  field.grid.y_max = parse_double(yr[1], path);
  field.grid.validate();
  if (lines.size() != 4 + static_cast<std::size_t>(field.grid.ny)) {
    fail(Errc::parse_error, path + ": wrong row count");
  }
  field.values.reserve(static_cast<std::size_t>(field.grid.nx) * field.grid.ny);
  for (int j = 0; j < field.grid.ny; ++j) {
    auto cells = split_csv_line(lines[4 + j]);
    if (cells.size() != static_cast<std::size_t>(field.grid.nx)) {
      fail(Errc::parse_error, path + ": wrong column count in data row");
    }
    for (const auto& cell : cells) {
      field.values.push_back(parse_double(cell, path));
    }
  }
  field.mask.resize(field.values.size());
  for (std::size_t c = 0; c < field.values.size(); ++c) {
    field.mask[c] = std::isnan(field.values[c]) ? 0 : 1;
  }
  return field;
}

}  // namespace emwave
