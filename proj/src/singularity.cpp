#include "singzone/singularity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <ostream>
#include <unordered_map>

#include "singzone/errors.hpp"

namespace singzone {

double s_value(double theta, double phi) {
  const double c2 = std::cos(theta) * std::cos(theta);
  const double cphi = std::cos(phi);
  return -1.0 + c2 * cphi * cphi - c2 * cphi * std::sin(phi);
}

GridScan scan_grid(const ScanRequest& request) {
  if (request.theta.count < 2 || request.phi.count < 2) {
    throw ConfigError("grid scans need at least two samples per axis");
  }
  if (request.kind == ScanKind::SFunction) {
    GridScan scan = scan_field(request.theta, request.phi, s_value);
    scan.kind = ScanKind::SFunction;
    return scan;
  }

  if (request.fixed_zeta == 0.0 || !std::isfinite(request.fixed_zeta)) {
    throw ConfigError("determinant scan needs zeta != 0");
  }
  request.params.validate();

  GridScan scan;
  scan.theta = request.theta;
  scan.phi = request.phi;
  scan.kind = ScanKind::DetOracle;
  scan.fixed_psi = request.fixed_psi;
  scan.fixed_zeta = request.fixed_zeta;
  scan.values.setConstant(request.theta.count, request.phi.count,
                          std::numeric_limits<double>::quiet_NaN());
  scan.scale = scan.values;

  // Delta depends on (psi, theta, phi, zeta) only; rates and velocities stay zero.
  State14 s = State14::Zero();
  s(kPsi) = request.fixed_psi;
  s(kZeta) = request.fixed_zeta;
  for (Eigen::Index i = 0; i < request.theta.count; ++i) {
    for (Eigen::Index j = 0; j < request.phi.count; ++j) {
      s(kTheta) = request.theta.at(i);
      s(kPhi) = request.phi.at(j);
      try {
        const DecouplingSystem sys = delta_yawpos(s, request.params, request.margins);
        scan.values(i, j) = sys.det;
        scan.scale(i, j) = sys.row_norm_product;
      } catch (const DomainError&) {
        // left unevaluated
      }
    }
  }
  return scan;
}

std::size_t ContourSet::vertex_count() const {
  std::size_t n = 0;
  for (const auto& line : polylines) n += line.size();
  return n;
}

namespace {

struct MarchingSquares {
  const GridScan& scan;
  Eigen::Index nt, np;
  // Edge key -> interpolated crossing point.
  std::unordered_map<std::int64_t, Eigen::Vector2d> points;
  std::unordered_map<std::int64_t, std::vector<std::int64_t>> adjacency;

  explicit MarchingSquares(const GridScan& s)
      : scan(s), nt(s.theta.count), np(s.phi.count) {}

  bool positive(Eigen::Index i, Eigen::Index j) const { return scan.values(i, j) > 0.0; }

  // Edges along theta (type 0) start at (i, j) and end at (i + 1, j);
  // edges along phi (type 1) end at (i, j + 1).
  std::int64_t key(int type, Eigen::Index i, Eigen::Index j) const {
    return (static_cast<std::int64_t>(type) * nt + i) * np + j;
  }

  std::int64_t crossing(int type, Eigen::Index i, Eigen::Index j) {
    const std::int64_t k = key(type, i, j);
    if (points.find(k) == points.end()) {
      const Eigen::Index i2 = type == 0 ? i + 1 : i;
      const Eigen::Index j2 = type == 0 ? j : j + 1;
      const double a = scan.values(i, j), b = scan.values(i2, j2);
      const double t = a / (a - b);
      const Eigen::Vector2d pa(scan.theta.at(i), scan.phi.at(j));
      const Eigen::Vector2d pb(scan.theta.at(i2), scan.phi.at(j2));
      points.emplace(k, pa + t * (pb - pa));
    }
    return k;
  }

  void connect(std::int64_t a, std::int64_t b) {
    adjacency[a].push_back(b);
    adjacency[b].push_back(a);
  }

  void march() {
    for (Eigen::Index i = 0; i + 1 < nt; ++i) {
      for (Eigen::Index j = 0; j + 1 < np; ++j) {
        if (!scan.evaluated(i, j) || !scan.evaluated(i + 1, j) ||
            !scan.evaluated(i + 1, j + 1) || !scan.evaluated(i, j + 1)) {
          continue;
        }
        const bool c0 = positive(i, j), c1 = positive(i + 1, j);
        const bool c2 = positive(i + 1, j + 1), c3 = positive(i, j + 1);

        std::vector<std::int64_t> crossed;
        if (c0 != c1) crossed.push_back(crossing(0, i, j));
        if (c1 != c2) crossed.push_back(crossing(1, i + 1, j));
        if (c3 != c2) crossed.push_back(crossing(0, i, j + 1));
        if (c0 != c3) crossed.push_back(crossing(1, i, j));

        if (crossed.size() == 2) {
          connect(crossed[0], crossed[1]);
        } else if (crossed.size() == 4) {
          // Saddle: the cell-center average decides which diagonal pair is joined.
          const double center = 0.25 * (scan.values(i, j) + scan.values(i + 1, j) +
                                        scan.values(i + 1, j + 1) + scan.values(i, j + 1));
          if ((center > 0.0) == c0) {
            connect(crossed[0], crossed[1]);
            connect(crossed[2], crossed[3]);
          } else {
            connect(crossed[3], crossed[0]);
            connect(crossed[1], crossed[2]);
          }
        }
      }
    }
  }

  ContourSet stitch() {
    // Deterministic traversal order: sorted keys.
    std::vector<std::int64_t> keys;
    keys.reserve(adjacency.size());
    for (const auto& [k, _] : adjacency) keys.push_back(k);
    std::sort(keys.begin(), keys.end());

    std::unordered_map<std::int64_t, bool> visited;
    ContourSet out;
    auto walk = [&](std::int64_t start) {
      std::vector<Eigen::Vector2d> line;
      std::int64_t prev = -1, cur = start;
      while (true) {
        visited[cur] = true;
        line.push_back(points.at(cur));
        std::int64_t next = -1;
        for (std::int64_t n : adjacency.at(cur)) {
          if (n != prev && !visited[n]) {
            next = n;
            break;
          }
        }
        if (next < 0) {
          // Close loops back onto the start vertex.
          for (std::int64_t n : adjacency.at(cur)) {
            if (n == start && n != prev && line.size() > 2) line.push_back(points.at(start));
          }
          break;
        }
        prev = cur;
        cur = next;
      }
      out.polylines.push_back(std::move(line));
    };
    for (std::int64_t k : keys) {
      if (!visited[k] && adjacency.at(k).size() == 1) walk(k);
    }
    for (std::int64_t k : keys) {
      if (!visited[k]) walk(k);
    }
    return out;
  }
};

}  // namespace

ContourSet zero_contour(const GridScan& scan) {
  MarchingSquares ms(scan);
  ms.march();
  if (ms.adjacency.empty()) throw EmptyContour("no zero crossing in the scanned field");
  return ms.stitch();
}

const char* cell_class_name(CellClass c) {
  switch (c) {
    case CellClass::AgreeNonsingular: return "AGREE_NONSINGULAR";
    case CellClass::AgreeSingular: return "AGREE_SINGULAR";
    case CellClass::Disagree: return "DISAGREE";
    case CellClass::Unevaluated: return "UNEVALUATED";
  }
  return "?";
}

CellClass DiscrepancyReport::at(double th, double ph) const {
  auto nearest = [](const GridAxis& axis, double x) {
    const double t = std::round((x - axis.min) / axis.step());
    return static_cast<Eigen::Index>(std::clamp(t, 0.0, static_cast<double>(axis.count - 1)));
  };
  return cell(nearest(theta, th), nearest(phi, ph));
}

DiscrepancyReport discrepancy_report(const GridScan& s_scan, const GridScan& det_scan,
                                     double s_tol, double det_tol) {
  if (!(s_scan.theta == det_scan.theta) || !(s_scan.phi == det_scan.phi) ||
      s_scan.values.rows() != det_scan.values.rows() ||
      s_scan.values.cols() != det_scan.values.cols()) {
    throw GridMismatch("discrepancy report needs scans on identical grids");
  }
  DiscrepancyReport report;
  report.theta = s_scan.theta;
  report.phi = s_scan.phi;
  report.s_values = s_scan.values;
  report.det_values = det_scan.values;
  report.fixed_psi = det_scan.fixed_psi;
  report.fixed_zeta = det_scan.fixed_zeta;
  report.s_tol = s_tol;
  report.det_tol = det_tol;
  report.cells.reserve(static_cast<std::size_t>(s_scan.values.size()));

  for (Eigen::Index i = 0; i < s_scan.theta.count; ++i) {
    for (Eigen::Index j = 0; j < s_scan.phi.count; ++j) {
      CellClass c = CellClass::Unevaluated;
      if (s_scan.evaluated(i, j) && det_scan.evaluated(i, j)) {
        const bool s_singular = std::abs(s_scan.values(i, j)) <= s_tol * s_scan.scale(i, j);
        const bool det_singular =
            std::abs(det_scan.values(i, j)) <= det_tol * det_scan.scale(i, j);
        if (s_singular != det_singular) {
          c = CellClass::Disagree;
        } else {
          c = s_singular ? CellClass::AgreeSingular : CellClass::AgreeNonsingular;
        }
      }
      report.cells.push_back(c);
      ++report.counts[static_cast<std::size_t>(c)];
    }
  }
  return report;
}

namespace {
struct PrecisionGuard {
  std::ostream& os;
  std::streamsize old;
  explicit PrecisionGuard(std::ostream& o) : os(o), old(o.precision(17)) {}
  ~PrecisionGuard() { os.precision(old); }
};
}  // namespace

void write_grid_csv(std::ostream& os, const GridScan& scan) {
  PrecisionGuard guard(os);
  os << "theta,phi,value\n";
  for (Eigen::Index i = 0; i < scan.theta.count; ++i)
    for (Eigen::Index j = 0; j < scan.phi.count; ++j)
      os << scan.theta.at(i) << ',' << scan.phi.at(j) << ',' << scan.values(i, j) << '\n';
}

void write_contour_csv(std::ostream& os, const ContourSet& contours) {
  PrecisionGuard guard(os);
  os << "polyline_id,theta,phi\n";
  for (std::size_t k = 0; k < contours.polylines.size(); ++k)
    for (const auto& v : contours.polylines[k]) os << k << ',' << v.x() << ',' << v.y() << '\n';
}

void write_discrepancy_csv(std::ostream& os, const DiscrepancyReport& report) {
  PrecisionGuard guard(os);
  os << "theta,phi,s_value,det_value,classification\n";
  for (Eigen::Index i = 0; i < report.theta.count; ++i) {
    for (Eigen::Index j = 0; j < report.phi.count; ++j) {
      os << report.theta.at(i) << ',' << report.phi.at(j) << ',' << report.s_values(i, j) << ','
         << report.det_values(i, j) << ',' << cell_class_name(report.cell(i, j)) << '\n';
    }
  }
  os << "# ";
  write_discrepancy_summary(os, report);
}

void write_discrepancy_summary(std::ostream& os, const DiscrepancyReport& report) {
  os << "AGREE_NONSINGULAR=" << report.count(CellClass::AgreeNonsingular)
     << " AGREE_SINGULAR=" << report.count(CellClass::AgreeSingular)
     << " DISAGREE=" << report.count(CellClass::Disagree)
     << " UNEVALUATED=" << report.count(CellClass::Unevaluated) << " psi=" << report.fixed_psi
     << " zeta=" << report.fixed_zeta << " s_tol=" << report.s_tol
     << " det_tol=" << report.det_tol << '\n';
}

}  // namespace singzone
