#pragma once

#include <vector>

#include "graspa/geometry.hpp"

namespace graspa {

/// The six-cell grid tiling the benchmark board. Cells are numbered
/// row-major from the board origin: region 1 is the min-x/min-y corner,
/// regions 1..3 the first row, 4..6 the second.
struct RegionGrid {
  double width = 0.594;   // meters, x extent
  double height = 0.420;  // meters, y extent
  int rows = 2;
  int cols = 3;

  double cell_width() const { return width / cols; }
  double cell_height() const { return height / rows; }
  int region_count() const { return rows * cols; }
};

/// Membership slack: points within this distance of a cell edge belong to
/// every adjacent cell (pose files carry finite precision).
constexpr double kRegionBoundaryTol = 1e-3;

/// Region ids for a board-frame point, ascending. One id for interior
/// points; boundary points collect every adjacent cell. Throws OutOfBoard
/// when the point lies more than the tolerance outside the rectangle.
inline std::vector<int> regions_of_point(const Vector2d& xy, const RegionGrid& grid,
                                         double tol = kRegionBoundaryTol) {
  if (xy.x() < -tol || xy.x() > grid.width + tol || xy.y() < -tol ||
      xy.y() > grid.height + tol) {
    throw Error(ErrorKind::OutOfBoard,
                "point (" + std::to_string(xy.x()) + ", " + std::to_string(xy.y()) +
                    ") lies outside the board rectangle");
  }
  std::vector<int> ids;
  const double cw = grid.cell_width();
  const double ch = grid.cell_height();
  for (int row = 0; row < grid.rows; ++row) {
    for (int col = 0; col < grid.cols; ++col) {
      const double x0 = col * cw;
      const double y0 = row * ch;
      if (xy.x() >= x0 - tol && xy.x() <= x0 + cw + tol && xy.y() >= y0 - tol &&
          xy.y() <= y0 + ch + tol) {
        ids.push_back(row * grid.cols + col + 1);
      }
    }
  }
  return ids;
}

}  // namespace graspa
