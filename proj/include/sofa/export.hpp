#pragma once

#include <string>
#include <vector>

#include "sofa/path_functions.hpp"
#include "sofa/scenario.hpp"
#include "sofa/shape.hpp"
#include "sofa/solver.hpp"

namespace sofa {

/// Solution samples as CSV (alpha, r, t) with 17 significant digits.
void write_solution_csv(const std::string& path, const PathFunctions& rt);
PathFunctions read_solution_csv(const std::string& path);

/// Shape polylines as CSV (piece_label, alpha, x, y) with 12 significant digits.
void write_shape_csv(const std::string& path, const SofaBoundary& boundary);

/// Shape as an SVG document, 1 unit = `scale` px.
void write_shape_svg(const std::string& path, const SofaBoundary& boundary, double scale = 200.0);

/// r/t and r'/t' curves as a simple SVG plot.
void write_curves_svg(const std::string& path, const PathFunctions& rt, double scale = 200.0);

std::string area_report_json(const AreaReport& report);
void write_area_report(const std::string& path, const AreaReport& report);
AreaReport read_area_report(const std::string& path);

void write_trace_jsonl(const std::string& path, const std::vector<TraceEntry>& trace);

struct RunManifest {
    std::string command;
    std::string scenario;
    std::size_t n_points = 0;
    std::vector<std::string> inputs, outputs;
    double wall_seconds = 0.0;
    std::string outcome;
    std::string config_json;
};

void write_manifest(const std::string& path, const RunManifest& m);

} // namespace sofa
