#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace hsurf::cli {

/// Samples on an nu x nv grid, row-major (j outer); missing entries are holes.
struct SampleGrid {
    int nu = 0, nv = 0;
    std::vector<std::optional<Eigen::Vector3d>> points;

    const std::optional<Eigen::Vector3d>& at(int i, int j) const {
        return points[static_cast<std::size_t>(j) * nu + i];
    }
};

/// Header i,j,u,v,x1,x2,x3; the grid extent is taken from the largest i and j.
SampleGrid read_sample_csv(std::istream& is);
void write_sample_csv(std::ostream& os, const SampleGrid& grid, const std::vector<double>& us,
                      const std::vector<double>& vs);

struct ObjStats {
    std::size_t vertices = 0;
    std::size_t faces = 0;
    std::size_t omitted_faces = 0;
};

ObjStats write_obj(std::ostream& os, const SampleGrid& grid);
ObjStats export_obj(const SampleGrid& grid, const std::string& path);

}  // namespace hsurf::cli
