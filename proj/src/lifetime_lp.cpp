#include "gsmsim/lifetime_lp.hpp"

#include <charconv>
#include <cstdlib>
#include <limits>
#include <map>
#include <sstream>
#include <string>

#include "gsmsim/errors.hpp"

namespace gsmsim {

namespace {

std::string ring_tag(Ring kind) {
    return kind == Ring::Inner ? "inner" : "outer";
}

std::string fmt_num(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

} // namespace

LpInstance build_lifetime_lp(const std::vector<Node>& nodes, const FieldGeometry& geometry,
                             const std::array<Trajectory, 2>& schedule,
                             const EnergyParams& params, long packet_bits,
                             const LpBuildOptions& options) {
    LpInstance lp;

    // One duration variable per stop. covering_var[cell] points at the stop
    // parked in that cell; rings are disjoint and stops within a ring are
    // unique, so a cell has at most one.
    if (schedule[0].stops.empty() && schedule[1].stops.empty())
        throw ModelError("empty sojourn schedule");

    std::vector<long> covering_var(geometry.cells.size(), -1);
    std::vector<double> per_round_load(geometry.cells.size(), 0.0);
    for (const Trajectory& t : schedule) {
        if (t.stops.empty()) continue;
        const double load = options.packets_per_visit >= 1
                                ? static_cast<double>(options.packets_per_visit)
                                : static_cast<double>(t.stops.size());
        for (std::size_t j = 0; j < t.stops.size(); ++j) {
            const std::size_t cell = t.stops[j];
            LpVariable var;
            var.name = "t_" + ring_tag(t.kind) + "_" + std::to_string(j);
            covering_var[cell] = static_cast<long>(lp.variables.size());
            per_round_load[cell] = load;
            lp.variables.push_back(var);
            lp.objective.push_back(1.0);

            const Cell& c = geometry.cells[cell];
            lp.comments.push_back("C_cell_" + std::to_string(c.row) + "_" +
                                  std::to_string(c.col) + " = 1 (" + ring_tag(t.kind) +
                                  " stop " + std::to_string(j) + ")");
        }
    }
    lp.comments.push_back(
        "flow rows read delivered packets as incoming minus outgoing on the "
        "node-to-sink link, pinned to the per-cycle generated load");

    for (const Node& node : nodes) {
        if (!node.alive) continue;
        const std::size_t cell = cell_of(node.position, geometry);
        const long t_var = covering_var[cell];
        if (t_var < 0)
            throw ModelError("node " + std::to_string(node.id) +
                             " is covered by no sojourn location");
        const double load = per_round_load[cell];
        const double packet_cost = tx_energy_d2(
            params, packet_bits, dist_sq(node.position, geometry.cells[cell].center));

        LpConstraint energy;
        energy.name = "c_energy_" + std::to_string(node.id);
        energy.terms.push_back({static_cast<std::size_t>(t_var), load * packet_cost});
        energy.rel = LpRelation::Le;
        energy.rhs = node.energy;
        lp.constraints.push_back(energy);

        LpVariable xvar;
        xvar.name = "x_" + std::to_string(node.id);
        const std::size_t x_index = lp.variables.size();
        lp.variables.push_back(xvar);
        lp.objective.push_back(0.0);

        LpConstraint flow;
        flow.name = "c_flow_" + std::to_string(node.id);
        flow.terms.push_back({x_index, 1.0});
        flow.rel = LpRelation::Eq;
        flow.rhs = load;
        lp.constraints.push_back(flow);

        LpConstraint rate;
        rate.name = "c_rate_" + std::to_string(node.id);
        rate.terms.push_back({x_index, 1.0});
        rate.rel = LpRelation::Le;
        rate.rhs = options.link_capacity > 0.0 ? options.link_capacity : load;
        lp.constraints.push_back(rate);
    }

    if (options.equal_dwell) {
        std::size_t base = 0;
        for (const Trajectory& t : schedule) {
            for (std::size_t j = 1; j < t.stops.size(); ++j) {
                LpConstraint tie;
                tie.name = "c_sched_" + ring_tag(t.kind) + "_" + std::to_string(j);
                tie.terms.push_back({base, 1.0});
                tie.terms.push_back({base + j, -1.0});
                tie.rel = LpRelation::Eq;
                tie.rhs = 0.0;
                lp.constraints.push_back(tie);
            }
            base += t.stops.size();
        }
    }
    return lp;
}

namespace {

void append_terms(std::string& out, const std::vector<LpTerm>& terms,
                  const std::vector<LpVariable>& variables) {
    bool first = true;
    for (const LpTerm& term : terms) {
        if (term.coeff == 0.0) continue;
        const double mag = term.coeff < 0.0 ? -term.coeff : term.coeff;
        if (first) {
            if (term.coeff < 0.0) out += "- ";
        } else {
            out += term.coeff < 0.0 ? " - " : " + ";
        }
        if (mag != 1.0) {
            out += fmt_num(mag);
            out += ' ';
        }
        out += variables[term.var].name;
        first = false;
    }
    if (first) out += "0 " + variables.at(0).name; // degenerate all-zero row
}

} // namespace

std::string export_lp(const LpInstance& instance) {
    std::string out;
    for (const std::string& c : instance.comments) {
        out += "\\ ";
        out += c;
        out += '\n';
    }
    out += "Maximize\n obj: ";
    std::vector<LpTerm> obj_terms;
    for (std::size_t j = 0; j < instance.objective.size(); ++j)
        if (instance.objective[j] != 0.0) obj_terms.push_back({j, instance.objective[j]});
    append_terms(out, obj_terms, instance.variables);
    out += "\nSubject To\n";
    for (const LpConstraint& c : instance.constraints) {
        out += ' ';
        out += c.name;
        out += ": ";
        append_terms(out, c.terms, instance.variables);
        switch (c.rel) {
        case LpRelation::Le: out += " <= "; break;
        case LpRelation::Ge: out += " >= "; break;
        case LpRelation::Eq: out += " = "; break;
        }
        out += fmt_num(c.rhs);
        out += '\n';
    }
    out += "Bounds\n";
    for (const LpVariable& v : instance.variables) {
        // x >= 0 is the format's default; only deviations need a line.
        if (v.lower == 0.0 && v.upper == std::numeric_limits<double>::infinity()) continue;
        out += ' ';
        if (v.upper == std::numeric_limits<double>::infinity()) {
            out += v.name + " >= " + fmt_num(v.lower);
        } else {
            out += fmt_num(v.lower) + " <= " + v.name + " <= " + fmt_num(v.upper);
        }
        out += '\n';
    }
    out += "End\n";
    return out;
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) tokens.push_back(tok);
    return tokens;
}

bool parse_double(const std::string& s, double& out) {
    const char* begin = s.data();
    const char* end = begin + s.size();
    const auto res = std::from_chars(begin, end, out);
    return res.ec == std::errc() && res.ptr == end;
}

bool looks_numeric(const std::string& s) {
    if (s.empty()) return false;
    const char c = s[0];
    return (c >= '0' && c <= '9') || c == '.' || c == '-' || c == '+';
}

struct VarTable {
    LpInstance* lp;
    std::map<std::string, std::size_t> index;

    std::size_t get(const std::string& name) {
        auto it = index.find(name);
        if (it != index.end()) return it->second;
        LpVariable v;
        v.name = name;
        const std::size_t id = lp->variables.size();
        lp->variables.push_back(v);
        lp->objective.push_back(0.0);
        index.emplace(name, id);
        return id;
    }
};

// Parses "name", "2.5 name", "- name", "name + 3 other - fourth" sequences.
std::vector<LpTerm> parse_expr(const std::vector<std::string>& tokens, std::size_t begin,
                               std::size_t end, VarTable& vars) {
    std::vector<LpTerm> terms;
    double sign = 1.0;
    double coeff = 1.0;
    bool have_coeff = false;
    for (std::size_t i = begin; i < end; ++i) {
        const std::string& tok = tokens[i];
        if (tok == "+") {
            sign = 1.0;
        } else if (tok == "-") {
            sign = -1.0;
        } else if (looks_numeric(tok)) {
            if (have_coeff || !parse_double(tok, coeff))
                throw ArgumentError("lp parse: bad term near '" + tok + "'");
            have_coeff = true;
        } else {
            terms.push_back({vars.get(tok), sign * coeff});
            sign = 1.0;
            coeff = 1.0;
            have_coeff = false;
        }
    }
    if (have_coeff) throw ArgumentError("lp parse: dangling coefficient");
    return terms;
}

} // namespace

LpInstance parse_lp(const std::string& text) {
    LpInstance lp;
    VarTable vars{&lp, {}};

    std::vector<std::string> lines;
    std::string current;
    for (char ch : text) {
        if (ch == '\n') {
            lines.push_back(current);
            current.clear();
        } else {
            current += ch;
        }
    }
    if (!current.empty()) lines.push_back(current);

    enum class Section { Preamble, Objective, Constraints, Bounds, Done };
    Section section = Section::Preamble;

    for (const std::string& raw : lines) {
        if (raw.empty()) continue;
        if (raw[0] == '\\') {
            std::string comment = raw.substr(1);
            if (!comment.empty() && comment[0] == ' ') comment.erase(0, 1);
            lp.comments.push_back(comment);
            continue;
        }
        std::vector<std::string> tokens = tokenize(raw);
        if (tokens.empty()) continue;

        if (tokens.size() == 1 && tokens[0] == "Maximize") {
            if (section != Section::Preamble) throw ArgumentError("lp parse: misplaced Maximize");
            section = Section::Objective;
            continue;
        }
        if (tokens.size() == 2 && tokens[0] == "Subject" && tokens[1] == "To") {
            if (section != Section::Objective)
                throw ArgumentError("lp parse: misplaced Subject To");
            section = Section::Constraints;
            continue;
        }
        if (tokens.size() == 1 && tokens[0] == "Bounds") {
            if (section != Section::Constraints) throw ArgumentError("lp parse: misplaced Bounds");
            section = Section::Bounds;
            continue;
        }
        if (tokens.size() == 1 && tokens[0] == "End") {
            if (section != Section::Bounds) throw ArgumentError("lp parse: misplaced End");
            section = Section::Done;
            continue;
        }

        switch (section) {
        case Section::Objective: {
            if (tokens[0] != "obj:") throw ArgumentError("lp parse: expected obj: line");
            const std::vector<LpTerm> terms = parse_expr(tokens, 1, tokens.size(), vars);
            for (const LpTerm& t : terms) lp.objective[t.var] += t.coeff;
            break;
        }
        case Section::Constraints: {
            if (tokens[0].empty() || tokens[0].back() != ':')
                throw ArgumentError("lp parse: constraint missing name");
            LpConstraint c;
            c.name = tokens[0].substr(0, tokens[0].size() - 1);
            std::size_t rel_pos = 0;
            for (std::size_t i = 1; i < tokens.size(); ++i) {
                if (tokens[i] == "<=" || tokens[i] == ">=" || tokens[i] == "=") {
                    rel_pos = i;
                    break;
                }
            }
            if (rel_pos == 0 || rel_pos + 2 != tokens.size())
                throw ArgumentError("lp parse: malformed constraint '" + c.name + "'");
            c.rel = tokens[rel_pos] == "<=" ? LpRelation::Le
                    : tokens[rel_pos] == ">=" ? LpRelation::Ge
                                              : LpRelation::Eq;
            if (!parse_double(tokens[rel_pos + 1], c.rhs))
                throw ArgumentError("lp parse: bad rhs in '" + c.name + "'");
            c.terms = parse_expr(tokens, 1, rel_pos, vars);
            lp.constraints.push_back(std::move(c));
            break;
        }
        case Section::Bounds: {
            if (tokens.size() == 3 && tokens[1] == ">=") {
                double lo = 0.0;
                if (!parse_double(tokens[2], lo)) throw ArgumentError("lp parse: bad bound");
                lp.variables[vars.get(tokens[0])].lower = lo;
            } else if (tokens.size() == 5 && tokens[1] == "<=" && tokens[3] == "<=") {
                double lo = 0.0, hi = 0.0;
                if (!parse_double(tokens[0], lo) || !parse_double(tokens[4], hi))
                    throw ArgumentError("lp parse: bad bound");
                LpVariable& v = lp.variables[vars.get(tokens[2])];
                v.lower = lo;
                v.upper = hi;
            } else {
                throw ArgumentError("lp parse: unsupported bound line");
            }
            break;
        }
        default:
            throw ArgumentError("lp parse: content outside any section");
        }
    }
    if (section != Section::Done) throw ArgumentError("lp parse: missing End");
    return lp;
}

} // namespace gsmsim
