#include "gsmsim/geometry.hpp"

#include <cmath>
#include <sstream>

#include "gsmsim/errors.hpp"

namespace gsmsim {

namespace {

std::size_t cell_index(const FieldGeometry& g, int row, int col) {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(g.divisions) +
           static_cast<std::size_t>(col);
}

// Clockwise perimeter walk over the outermost cells, starting at (0,0):
// north along the west edge, east along the north edge, south along the east
// edge, then back west along the south edge.
std::vector<std::size_t> outer_cycle(const FieldGeometry& g) {
    const int last = g.divisions - 1;
    std::vector<std::size_t> stops;
    stops.reserve(static_cast<std::size_t>(4 * last));
    for (int r = 0; r <= last; ++r) stops.push_back(cell_index(g, r, 0));
    for (int c = 1; c <= last; ++c) stops.push_back(cell_index(g, last, c));
    for (int r = last - 1; r >= 0; --r) stops.push_back(cell_index(g, r, last));
    for (int c = last - 1; c >= 1; --c) stops.push_back(cell_index(g, 0, c));
    return stops;
}

// Hamiltonian cycle over the whole (g-2) x (g-2) interior block, starting at
// (1,1) and heading north like the outer walk. Column 1 is walked in full,
// the remaining columns snake up and down one row short of the bottom, and
// the bottom row leads back to the start. The interior block always has even
// side length (g is even), so the cycle closes. For g=4 this is exactly the
// clockwise tour of the four inner cells.
std::vector<std::size_t> inner_cycle(const FieldGeometry& g) {
    const int lo = 1;
    const int hi = g.divisions - 2;
    std::vector<std::size_t> stops;
    stops.reserve(static_cast<std::size_t>(hi - lo + 1) * static_cast<std::size_t>(hi - lo + 1));
    for (int r = lo; r <= hi; ++r) stops.push_back(cell_index(g, r, lo));
    for (int c = lo + 1; c <= hi; ++c) {
        if ((c - lo) % 2 == 1) {
            for (int r = hi; r >= lo + 1; --r) stops.push_back(cell_index(g, r, c));
        } else {
            for (int r = lo + 1; r <= hi; ++r) stops.push_back(cell_index(g, r, c));
        }
    }
    for (int c = hi; c >= lo + 1; --c) stops.push_back(cell_index(g, lo, c));
    return stops;
}

} // namespace

FieldGeometry partition_field(double field_side, int divisions) {
    if (!(field_side > 0.0)) throw GeometryError("field_side must be > 0");
    if (divisions < 2 || divisions % 2 != 0)
        throw GeometryError("divisions must be even and >= 2");
    if (divisions == 2)
        throw GeometryError("divisions=2 leaves no inner cells; need >= 4");

    FieldGeometry g;
    g.field_side = field_side;
    g.divisions = divisions;
    g.cell_side = field_side / divisions;
    g.half_side = field_side / (2.0 * divisions);
    g.cells.reserve(static_cast<std::size_t>(divisions) * static_cast<std::size_t>(divisions));
    for (int row = 0; row < divisions; ++row) {
        for (int col = 0; col < divisions; ++col) {
            Cell c;
            c.row = row;
            c.col = col;
            c.center.x = (col + 0.5) * g.cell_side;
            c.center.y = (row + 0.5) * g.cell_side;
            g.cells.push_back(c);
        }
    }
    return g;
}

Trajectory build_trajectory(const FieldGeometry& geometry, Ring kind) {
    Trajectory t;
    t.kind = kind;
    t.stops = (kind == Ring::Inner) ? inner_cycle(geometry) : outer_cycle(geometry);
    return t;
}

CharacteristicDistances characteristic_distances(const FieldGeometry& geometry) {
    CharacteristicDistances d;
    const double x = geometry.half_side;
    d.d_node_max = std::sqrt(2.0) * x;
    d.d_min = 2.0 * x;
    d.d_max = 2.0 * std::sqrt(2.0) * x;
    return d;
}

std::size_t cell_of(Point p, const FieldGeometry& geometry) {
    if (p.x < 0.0 || p.y < 0.0 || p.x > geometry.field_side || p.y > geometry.field_side)
        throw GeometryError("point outside field");
    int col = static_cast<int>(std::floor(p.x / geometry.cell_side));
    int row = static_cast<int>(std::floor(p.y / geometry.cell_side));
    if (col > geometry.divisions - 1) col = geometry.divisions - 1;
    if (row > geometry.divisions - 1) row = geometry.divisions - 1;
    return cell_index(geometry, row, col);
}

double node_sink_distance(Point node, Point sojourn) {
    return std::sqrt(dist_sq(node, sojourn));
}

std::string geometry_csv(const FieldGeometry& geometry) {
    std::ostringstream out;
    out << "kind,order,x,y\n";
    int order = 0;
    for (const Cell& c : geometry.cells) {
        out << "cell," << order++ << ',' << c.center.x << ',' << c.center.y << '\n';
    }
    for (Ring kind : {Ring::Inner, Ring::Outer}) {
        const Trajectory t = build_trajectory(geometry, kind);
        const char* name = (kind == Ring::Inner) ? "inner" : "outer";
        int i = 0;
        for (std::size_t stop : t.stops) {
            const Point c = geometry.cells[stop].center;
            out << name << ',' << i++ << ',' << c.x << ',' << c.y << '\n';
        }
    }
    return out.str();
}

} // namespace gsmsim
