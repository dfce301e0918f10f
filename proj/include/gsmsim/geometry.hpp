#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gsmsim/core_model.hpp"

namespace gsmsim {

enum class Ring { Inner, Outer };

struct Cell {
    int row = 0;
    int col = 0;
    Point center;
};

// Square field split into g x g cells. g must be even and >= 4 so both the
// inner block and the outer ring are non-empty.
struct FieldGeometry {
    double field_side = 0.0;
    int divisions = 0;
    double cell_side = 0.0;
    double half_side = 0.0; // x = L / (2g)
    std::vector<Cell> cells; // row-major, index = row * g + col

    bool is_inner(int row, int col) const {
        return row >= 1 && row <= divisions - 2 && col >= 1 && col <= divisions - 2;
    }
    bool is_inner(std::size_t cell_index) const {
        const Cell& c = cells[cell_index];
        return is_inner(c.row, c.col);
    }
};

// Cyclic visit order over one ring's cells. Consecutive stops (including the
// wrap-around) are edge-adjacent; each ring cell appears exactly once.
struct Trajectory {
    Ring kind = Ring::Inner;
    std::vector<std::size_t> stops; // indices into FieldGeometry::cells
};

struct CharacteristicDistances {
    double d_node_max = 0.0; // sqrt(2) * x, worst in-cell node-to-sink distance
    double d_min = 0.0;      // 2x, adjacent sojourn spacing
    double d_max = 0.0;      // 2*sqrt(2)*x, diagonal spacing across rings
};

FieldGeometry partition_field(double field_side, int divisions);

Trajectory build_trajectory(const FieldGeometry& geometry, Ring kind);

CharacteristicDistances characteristic_distances(const FieldGeometry& geometry);

// Cell containing the point. Shared edges go to the higher row/col (floor
// convention); the far field boundary clamps into the last row/col.
std::size_t cell_of(Point p, const FieldGeometry& geometry);

double node_sink_distance(Point node, Point sojourn);

// CSV dump of cells and both trajectories for plotting.
// Columns: kind, order, x, y. kind is one of cell, inner, outer.
std::string geometry_csv(const FieldGeometry& geometry);

} // namespace gsmsim
