#include "mesh.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "hsurf/errors.hpp"
#include "report.hpp"

namespace hsurf::cli {

SampleGrid read_sample_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) fail(ErrorCode::EmptyGrid, "sample file is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "i,j,u,v,x1,x2,x3") fail(ErrorCode::IoError, "unexpected header '" + line + "'");
    std::map<std::pair<int, int>, Eigen::Vector3d> rows;
    int ni = 0, nj = 0, lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() != 7) fail(ErrorCode::IoError, "line " + std::to_string(lineno) + " does not have 7 fields");
        try {
            const int i = std::stoi(cells[0]), j = std::stoi(cells[1]);
            if (i < 0 || j < 0) throw std::invalid_argument("negative index");
            rows[{i, j}] = Eigen::Vector3d(std::stod(cells[4]), std::stod(cells[5]), std::stod(cells[6]));
            ni = std::max(ni, i + 1);
            nj = std::max(nj, j + 1);
        } catch (const std::exception&) {
            fail(ErrorCode::IoError, "line " + std::to_string(lineno) + " is not numeric");
        }
    }
    if (rows.empty()) fail(ErrorCode::EmptyGrid, "sample file has no rows");
    SampleGrid g{ni, nj, std::vector<std::optional<Eigen::Vector3d>>(static_cast<std::size_t>(ni) * nj)};
    for (const auto& [ij, x] : rows) g.points[static_cast<std::size_t>(ij.second) * ni + ij.first] = x;
    return g;
}

void write_sample_csv(std::ostream& os, const SampleGrid& grid, const std::vector<double>& us,
                      const std::vector<double>& vs) {
    os << "i,j,u,v,x1,x2,x3\n";
    for (int j = 0; j < grid.nv; ++j)
        for (int i = 0; i < grid.nu; ++i) {
            const auto& p = grid.at(i, j);
            if (!p) continue;
            os << i << ',' << j << ',' << fmt17(us[i]) << ',' << fmt17(vs[j]) << ',' << fmt17((*p)(0)) << ','
               << fmt17((*p)(1)) << ',' << fmt17((*p)(2)) << '\n';
        }
}

ObjStats write_obj(std::ostream& os, const SampleGrid& grid) {
    ObjStats st;
    std::vector<long> index(grid.points.size(), 0);
    for (std::size_t k = 0; k < grid.points.size(); ++k) {
        const auto& p = grid.points[k];
        if (!p) continue;
        index[k] = static_cast<long>(++st.vertices);
        os << "v " << fmt17((*p)(0)) << ' ' << fmt17((*p)(1)) << ' ' << fmt17((*p)(2)) << '\n';
    }
    if (st.vertices == 0) fail(ErrorCode::EmptyGrid, "no samples to export");
    auto id = [&](int i, int j) { return index[static_cast<std::size_t>(j) * grid.nu + i]; };
    auto tri = [&](long a, long b, long c) {
        if (a == 0 || b == 0 || c == 0) {
            ++st.omitted_faces;
            return;
        }
        ++st.faces;
        os << "f " << a << ' ' << b << ' ' << c << '\n';
    };
    for (int j = 0; j + 1 < grid.nv; ++j)
        for (int i = 0; i + 1 < grid.nu; ++i) {
            tri(id(i, j), id(i + 1, j), id(i + 1, j + 1));
            tri(id(i, j), id(i + 1, j + 1), id(i, j + 1));
        }
    return st;
}

ObjStats export_obj(const SampleGrid& grid, const std::string& path) {
    std::ostringstream buf;
    const ObjStats st = write_obj(buf, grid);
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::IoError, "cannot open '" + path + "' for writing");
    out << buf.str();
    if (!out.flush()) fail(ErrorCode::IoError, "write to '" + path + "' failed");
    return st;
}

}  // namespace hsurf::cli
