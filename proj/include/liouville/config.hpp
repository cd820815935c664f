#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "liouville/io.hpp"
#include "liouville/problem.hpp"

namespace liouville {

// Versioned run configuration. Parsed from JSON, validated against the module
// preconditions, and echoed (with all defaults materialized) into every
// output for provenance.
struct RunConfig {
    int schema = 1;
    Domain domain = Domain::disc({0, 0}, 1.0);
    Coefficient a = Coefficient::constant(1.0);
    SourceField h = SourceField::zero();
    double alpha = 0.5;
    int m = 0;
    std::vector<double> t_grid = {6.0}; // single entry means one t
    Point q{0.0, 0.0};
    double d = 0.5;
    int n = 256;
    Knobs knobs;
    std::vector<Point> xi;   // optional explicit bubble points (default: polygon)
    std::string out_dir = "out";
    int jobs = 1;
    bool force = false;

    double t() const { return t_grid.front(); }
};

RunConfig parse_config(const Json& j);
Json echo_config(const RunConfig& c);
std::unique_ptr<Problem> build_problem(const RunConfig& c);

// Bubble points for one t: the explicit xi when given, else the polygon.
std::vector<Point> config_points(const RunConfig& c, const Problem& pb, double t);

} // namespace liouville
