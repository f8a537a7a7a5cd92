#ifndef SINGZONE_SINGULARITY_HPP
#define SINGZONE_SINGULARITY_HPP

// Maps of the claimed singular surface S(theta, phi) and of the determinant of
// the yaw-position decoupling matrix, zero-level extraction by marching
// squares, and the per-cell comparison of the two zero sets.

#include <array>
#include <cmath>
#include <iosfwd>
#include <vector>

#include <Eigen/Core>

#include "singzone/decoupling.hpp"
#include "singzone/model.hpp"

namespace singzone {

/// S(theta, phi) = -1 + cos^2(theta) cos^2(phi) - cos^2(theta) cos(phi) sin(phi).
double s_value(double theta, double phi);

struct GridAxis {
  double min = -1.5;
  double max = 1.5;
  Eigen::Index count = 301;

  double at(Eigen::Index i) const {
    return min + (max - min) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  double step() const { return (max - min) / static_cast<double>(count - 1); }
  bool operator==(const GridAxis&) const = default;
};

enum class ScanKind { SFunction, DetOracle };

/// values(i, j) is the field at (theta.at(i), phi.at(j)); NaN marks unevaluated cells.
struct GridScan {
  GridAxis theta;
  GridAxis phi;
  ScanKind kind = ScanKind::SFunction;
  Eigen::MatrixXd values;
  /// Local magnitude used by relative tolerances (row-norm product of Delta; 1 for S).
  Eigen::MatrixXd scale;
  double fixed_psi = 0.0;
  double fixed_zeta = 0.0;

  bool evaluated(Eigen::Index i, Eigen::Index j) const { return !std::isnan(values(i, j)); }
};

struct ScanRequest {
  GridAxis theta;
  GridAxis phi;
  ScanKind kind = ScanKind::SFunction;
  double fixed_psi = 0.0;
  double fixed_zeta = 9.81;
  QuadParams params;
  DomainMargins margins;
};

GridScan scan_grid(const ScanRequest& request);

/// Scan over an arbitrary field; used for synthetic inputs.
template <typename Field>
GridScan scan_field(const GridAxis& theta, const GridAxis& phi, Field&& field) {
  GridScan scan;
  scan.theta = theta;
  scan.phi = phi;
  scan.values.resize(theta.count, phi.count);
  scan.scale.setOnes(theta.count, phi.count);
  for (Eigen::Index i = 0; i < theta.count; ++i)
    for (Eigen::Index j = 0; j < phi.count; ++j) scan.values(i, j) = field(theta.at(i), phi.at(j));
  return scan;
}

struct ContourSet {
  /// Each polyline is a sequence of (theta, phi) points.
  std::vector<std::vector<Eigen::Vector2d>> polylines;

  std::size_t vertex_count() const;
};

/// Marching squares on the zero level; throws EmptyContour when no sign change exists.
ContourSet zero_contour(const GridScan& scan);

enum class CellClass { AgreeNonsingular, AgreeSingular, Disagree, Unevaluated };

const char* cell_class_name(CellClass c);

struct DiscrepancyReport {
  GridAxis theta;
  GridAxis phi;
  /// Row-major over (theta, phi), same layout as the CSV export.
  std::vector<CellClass> cells;
  Eigen::MatrixXd s_values;
  Eigen::MatrixXd det_values;
  double fixed_psi = 0.0;
  double fixed_zeta = 0.0;
  double s_tol = 0.0;
  double det_tol = 0.0;
  std::array<std::size_t, 4> counts{};

  std::size_t count(CellClass c) const { return counts[static_cast<std::size_t>(c)]; }
  CellClass cell(Eigen::Index i, Eigen::Index j) const {
    return cells[static_cast<std::size_t>(i * phi.count + j)];
  }
  /// Classification of the cell whose grid node is nearest to (theta, phi).
  CellClass at(double theta, double phi) const;
};

inline constexpr double kDefaultSTol = 1e-9;
inline constexpr double kDefaultDetTol = 1e-9;

DiscrepancyReport discrepancy_report(const GridScan& s_scan, const GridScan& det_scan,
                                     double s_tol = kDefaultSTol,
                                     double det_tol = kDefaultDetTol);

void write_grid_csv(std::ostream& os, const GridScan& scan);
void write_contour_csv(std::ostream& os, const ContourSet& contours);
void write_discrepancy_csv(std::ostream& os, const DiscrepancyReport& report);
void write_discrepancy_summary(std::ostream& os, const DiscrepancyReport& report);

}  // namespace singzone

#endif  // SINGZONE_SINGULARITY_HPP
