#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <string>
#include <vector>

#include "gsmsim/errors.hpp"
#include "gsmsim/lifetime_lp.hpp"
#include "gsmsim/rng.hpp"
#include "oracles.hpp"

using namespace gsmsim;

namespace {

LpInstance make_lp(std::vector<std::string> vars, std::vector<double> objective) {
    LpInstance lp;
    for (auto& v : vars) {
        LpVariable x;
        x.name = std::move(v);
        lp.variables.push_back(std::move(x));
    }
    lp.objective = std::move(objective);
    return lp;
}

void add_row(LpInstance& lp, std::string name, std::vector<LpTerm> terms, LpRelation rel,
             double rhs) {
    LpConstraint c;
    c.name = std::move(name);
    c.terms = std::move(terms);
    c.rel = rel;
    c.rhs = rhs;
    lp.constraints.push_back(std::move(c));
}

Node make_node(int id, double x, double y, double energy = 0.5) {
    Node n;
    n.id = id;
    n.position = {x, y};
    n.energy = energy;
    return n;
}

bool instances_equal(const LpInstance& a, const LpInstance& b) {
    if (a.variables.size() != b.variables.size()) return false;
    for (std::size_t i = 0; i < a.variables.size(); ++i) {
        if (a.variables[i].name != b.variables[i].name) return false;
        if (a.variables[i].lower != b.variables[i].lower) return false;
        if (a.variables[i].upper != b.variables[i].upper) return false;
    }
    if (a.objective != b.objective) return false;
    if (a.comments != b.comments) return false;
    if (a.constraints.size() != b.constraints.size()) return false;
    for (std::size_t i = 0; i < a.constraints.size(); ++i) {
        const auto& ca = a.constraints[i];
        const auto& cb = b.constraints[i];
        if (ca.name != cb.name || ca.rel != cb.rel || ca.rhs != cb.rhs) return false;
        if (ca.terms.size() != cb.terms.size()) return false;
        for (std::size_t j = 0; j < ca.terms.size(); ++j)
            if (ca.terms[j].var != cb.terms[j].var || ca.terms[j].coeff != cb.terms[j].coeff)
                return false;
    }
    return true;
}

} // namespace

TEST_CASE("one variable, one constraint") {
    auto lp = make_lp({"t"}, {1.0});
    add_row(lp, "cap", {{0, 1.0}}, LpRelation::Le, 5.0);
    const auto sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.objective_value == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(sol.values[0] == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("two variables with a shared budget") {
    auto lp = make_lp({"t1", "t2"}, {1.0, 1.0});
    add_row(lp, "sum", {{0, 1.0}, {1, 1.0}}, LpRelation::Le, 3.0);
    add_row(lp, "t1cap", {{0, 1.0}}, LpRelation::Le, 2.0);
    const auto sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.objective_value == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("infeasible and unbounded programs are reported as statuses") {
    auto infeasible = make_lp({"t"}, {1.0});
    add_row(infeasible, "lo", {{0, 1.0}}, LpRelation::Ge, 2.0);
    add_row(infeasible, "hi", {{0, 1.0}}, LpRelation::Le, 1.0);
    CHECK(solve_lp(infeasible).status == LpStatus::Infeasible);

    auto unbounded = make_lp({"t"}, {1.0});
    add_row(unbounded, "lo", {{0, 1.0}}, LpRelation::Ge, 1.0);
    const auto sol = solve_lp(unbounded);
    CHECK(sol.status == LpStatus::Unbounded);
    CHECK(std::isinf(sol.objective_value));
}

TEST_CASE("equality constraints pass through phase one") {
    auto lp = make_lp({"a", "b"}, {1.0, 2.0});
    add_row(lp, "fix", {{0, 1.0}, {1, 1.0}}, LpRelation::Eq, 4.0);
    add_row(lp, "cap", {{1, 1.0}}, LpRelation::Le, 3.0);
    const auto sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    // b as large as possible: b=3, a=1 -> objective 7.
    CHECK(sol.objective_value == doctest::Approx(7.0).epsilon(1e-12));
    CHECK(sol.values[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sol.values[1] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("negative right-hand sides are normalized correctly") {
    // -t <= -2 means t >= 2; maximize -t -> t = 2, objective -2.
    auto lp = make_lp({"t"}, {-1.0});
    add_row(lp, "lo", {{0, -1.0}}, LpRelation::Le, -2.0);
    const auto sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.objective_value == doctest::Approx(-2.0).epsilon(1e-12));
}

TEST_CASE("explicit variable bounds become rows") {
    auto lp = make_lp({"t"}, {1.0});
    lp.variables[0].lower = 1.0;
    lp.variables[0].upper = 6.5;
    const auto sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.objective_value == doctest::Approx(6.5).epsilon(1e-12));
}

TEST_CASE("duplicate terms on one variable are accumulated") {
    auto lp = make_lp({"t"}, {1.0});
    add_row(lp, "dup", {{0, 1.0}, {0, 1.0}}, LpRelation::Le, 8.0); // 2t <= 8
    const auto sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.objective_value == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("simplex agrees with vertex enumeration on random programs") {
    Rng rng(2718);
    for (int trial = 0; trial < 200; ++trial) {
        const LpInstance lp = oracles::random_small_lp(rng);
        const double expected = oracles::vertex_enumeration_optimum(lp);
        REQUIRE(std::isfinite(expected)); // generator guarantees a bounded optimum
        const auto sol = solve_lp(lp);
        REQUIRE(sol.status == LpStatus::Optimal);
        CHECK(std::abs(sol.objective_value - expected) <= 1e-7);
    }
}

TEST_CASE("builder: one node, one sojourn") {
    const FieldGeometry g = partition_field(100.0, 4);
    EnergyParams params;
    std::vector<Node> nodes{make_node(0, 38.0, 36.0)};
    const std::size_t cell = cell_of(nodes[0].position, g);

    std::array<Trajectory, 2> schedule;
    schedule[0].kind = Ring::Inner;
    schedule[0].stops = {cell};
    schedule[1].kind = Ring::Outer;

    const LpInstance lp = build_lifetime_lp(nodes, g, schedule, params, 4000);
    REQUIRE(lp.variables.size() == 2); // t_inner_0 and x_0
    CHECK(lp.variables[0].name == "t_inner_0");
    CHECK(lp.constraints.size() == 3);

    const double cost = tx_energy_d2(params, 4000, dist_sq(nodes[0].position,
                                                           g.cells[cell].center));
    const auto sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    // One pivot, one division: the optimum is E/c to the last bit.
    CHECK(sol.objective_value == 0.5 / cost);
}

TEST_CASE("builder: min-energy node binds a shared cell") {
    const FieldGeometry g = partition_field(100.0, 4);
    EnergyParams params;
    // Same position, energies E and 2E: equal cost, weaker node binds.
    std::vector<Node> nodes{make_node(0, 37.5, 37.5, 0.5), make_node(1, 37.5, 37.5, 1.0)};
    const std::size_t cell = cell_of({37.5, 37.5}, g);

    std::array<Trajectory, 2> schedule;
    schedule[0].kind = Ring::Inner;
    schedule[0].stops = {cell};
    schedule[1].kind = Ring::Outer;

    const auto sol = solve_lp(build_lifetime_lp(nodes, g, schedule, params, 4000));
    REQUIRE(sol.status == LpStatus::Optimal);
    const double cost = tx_energy(params, 4000, 0.0);
    CHECK(sol.objective_value == doctest::Approx(0.5 / cost).epsilon(1e-9));
}

TEST_CASE("builder: empty sojourn set and uncovered nodes are modeling errors") {
    const FieldGeometry g = partition_field(100.0, 4);
    EnergyParams params;
    std::vector<Node> nodes{make_node(7, 90.0, 90.0)};

    std::array<Trajectory, 2> empty_schedule;
    empty_schedule[0].kind = Ring::Inner;
    empty_schedule[1].kind = Ring::Outer;
    CHECK_THROWS_AS(build_lifetime_lp(nodes, g, empty_schedule, params, 4000), ModelError);

    std::array<Trajectory, 2> partial;
    partial[0].kind = Ring::Inner;
    partial[0].stops = {cell_of({37.5, 37.5}, g)};
    partial[1].kind = Ring::Outer;
    try {
        build_lifetime_lp(nodes, g, partial, params, 4000);
        FAIL("expected a model error");
    } catch (const ModelError& e) {
        CHECK(std::string(e.what()).find("7") != std::string::npos);
    }
}

TEST_CASE("builder: default field produces one duration variable per stop") {
    const FieldGeometry g = partition_field(100.0, 4);
    EnergyParams params;
    NetworkConfig net;
    auto nodes = deploy(net);
    std::array<Trajectory, 2> schedule{build_trajectory(g, Ring::Inner),
                                       build_trajectory(g, Ring::Outer)};

    const LpInstance lp = build_lifetime_lp(nodes, g, schedule, params, net.packet_bits);
    int t_vars = 0;
    for (const auto& v : lp.variables)
        if (v.name.rfind("t_", 0) == 0) ++t_vars;
    CHECK(t_vars == 16);
    CHECK(lp.variables.size() == 16 + 100);
    // Per node: energy, flow, rate. Per ring: stops-1 equal-dwell ties.
    CHECK(lp.constraints.size() == 300 + 3 + 11);

    const auto sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.objective_value > 0.0);

    // The reported optimum respects every constraint.
    for (const auto& c : lp.constraints) {
        double lhs = 0.0;
        for (const auto& t : c.terms) lhs += t.coeff * sol.values[t.var];
        switch (c.rel) {
        case LpRelation::Le: CHECK(lhs <= c.rhs + 1e-7); break;
        case LpRelation::Ge: CHECK(lhs >= c.rhs - 1e-7); break;
        case LpRelation::Eq: CHECK(std::abs(lhs - c.rhs) <= 1e-7); break;
        }
    }

    // Equal dwell means per-ring time splits evenly: the optimum equals
    // min over inner nodes of E/c plus min over outer nodes of E/c.
    double inner_min = std::numeric_limits<double>::infinity();
    double outer_min = std::numeric_limits<double>::infinity();
    for (const auto& n : nodes) {
        const std::size_t cell = cell_of(n.position, g);
        const double c = tx_energy_d2(params, net.packet_bits,
                                      dist_sq(n.position, g.cells[cell].center));
        double& slot = g.is_inner(cell) ? inner_min : outer_min;
        slot = std::min(slot, n.energy / c);
    }
    CHECK(sol.objective_value ==
          doctest::Approx(inner_min + outer_min).epsilon(1e-7));
}

TEST_CASE("builder: lifetime scales linearly with the energy budget") {
    const FieldGeometry g = partition_field(100.0, 4);
    EnergyParams params;
    NetworkConfig net;
    net.n_nodes = 30;
    auto nodes = deploy(net);
    std::array<Trajectory, 2> schedule{build_trajectory(g, Ring::Inner),
                                       build_trajectory(g, Ring::Outer)};

    const auto base = solve_lp(build_lifetime_lp(nodes, g, schedule, params, 4000));
    for (auto& n : nodes) n.energy *= 3.0;
    const auto scaled = solve_lp(build_lifetime_lp(nodes, g, schedule, params, 4000));
    REQUIRE(base.status == LpStatus::Optimal);
    REQUIRE(scaled.status == LpStatus::Optimal);
    CHECK(scaled.objective_value ==
          doctest::Approx(3.0 * base.objective_value).epsilon(1e-9));
}

TEST_CASE("builder: an empty ring leaves the program unbounded") {
    const FieldGeometry g = partition_field(100.0, 4);
    EnergyParams params;
    // Only an inner node; the outer ring durations have no energy rows.
    std::vector<Node> nodes{make_node(0, 40.0, 40.0)};
    std::array<Trajectory, 2> schedule{build_trajectory(g, Ring::Inner),
                                       build_trajectory(g, Ring::Outer)};
    const auto sol = solve_lp(build_lifetime_lp(nodes, g, schedule, params, 4000));
    CHECK(sol.status == LpStatus::Unbounded);
}

TEST_CASE("export format essentials") {
    auto lp = make_lp({"t"}, {1.0});
    const std::string text = export_lp(lp);
    CHECK(text == "Maximize\n obj: t\nSubject To\nBounds\nEnd\n");

    add_row(lp, "cap", {{0, 2.5}}, LpRelation::Le, 5.0);
    lp.comments.push_back("note");
    const std::string with_row = export_lp(lp);
    CHECK(with_row.find("\\ note\n") == 0);
    CHECK(with_row.find(" cap: 2.5 t <= 5\n") != std::string::npos);
    CHECK(with_row.find("\r") == std::string::npos); // LF endings only
}

TEST_CASE("export and parse round-trip the default instance") {
    const FieldGeometry g = partition_field(100.0, 4);
    EnergyParams params;
    NetworkConfig net;
    net.n_nodes = 20;
    auto nodes = deploy(net);
    std::array<Trajectory, 2> schedule{build_trajectory(g, Ring::Inner),
                                       build_trajectory(g, Ring::Outer)};
    const LpInstance lp = build_lifetime_lp(nodes, g, schedule, params, 4000);

    const std::string text = export_lp(lp);
    const LpInstance back = parse_lp(text);
    CHECK(instances_equal(lp, back));
    CHECK(export_lp(back) == text);

    // Both solve to the same optimum, bit for bit.
    const auto a = solve_lp(lp);
    const auto b = solve_lp(back);
    REQUIRE(a.status == LpStatus::Optimal);
    REQUIRE(b.status == LpStatus::Optimal);
    CHECK(a.objective_value == b.objective_value);
}

TEST_CASE("exported names stay in the sanitized alphabet") {
    const FieldGeometry g = partition_field(100.0, 4);
    EnergyParams params;
    NetworkConfig net;
    net.n_nodes = 10;
    auto nodes = deploy(net);
    std::array<Trajectory, 2> schedule{build_trajectory(g, Ring::Inner),
                                       build_trajectory(g, Ring::Outer)};
    const LpInstance lp = build_lifetime_lp(nodes, g, schedule, params, 4000);
    const auto ok = [](const std::string& name) {
        if (name.empty()) return false;
        for (char c : name) {
            const bool good = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                              (c >= '0' && c <= '9') || c == '_';
            if (!good) return false;
        }
        return true;
    };
    for (const auto& v : lp.variables) CHECK(ok(v.name));
    for (const auto& c : lp.constraints) CHECK(ok(c.name));
}

TEST_CASE("parser rejects malformed documents") {
    CHECK_THROWS_AS(parse_lp("Maximize\n obj: t\n"), ArgumentError);
    CHECK_THROWS_AS(parse_lp("Subject To\nEnd\n"), ArgumentError);
    CHECK_THROWS_AS(parse_lp("Maximize\n obj: t\nSubject To\n bad t <= 1\nBounds\nEnd\n"),
                    ArgumentError);
    CHECK_THROWS_AS(
        parse_lp("Maximize\n obj: t\nSubject To\n c: t <= x <= 1\nBounds\nEnd\n"),
        ArgumentError);
}
