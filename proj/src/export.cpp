#include "sofa/export.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "sofa/errors.hpp"

namespace sofa {

using nlohmann::json;

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write file: " + path);
    return out;
}

} // namespace

void write_solution_csv(const std::string& path, const PathFunctions& rt) {
    auto out = open_out(path);
    out << "alpha,r,t\n";
    out << std::setprecision(17);
    for (std::size_t i = 0; i < rt.size(); ++i)
        out << rt.alpha(i) << ',' << rt.r(i) << ',' << rt.t(i) << '\n';
}

PathFunctions read_solution_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read file: " + path);
    std::string line;
    std::getline(in, line); // header
    std::vector<double> al, rv, tv;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string f;
        double v[3];
        for (int k = 0; k < 3; ++k) {
            if (!std::getline(ss, f, ',')) throw Error("bad solution CSV line: " + line);
            v[k] = std::stod(f);
        }
        al.push_back(v[0]);
        rv.push_back(v[1]);
        tv.push_back(v[2]);
    }
    if (al.size() < 7) throw Error("solution CSV too short");
    UniformGrid g{al.front(), al.back(), al.size()};
    return PathFunctions(g, std::move(rv), std::move(tv));
}

void write_shape_csv(const std::string& path, const SofaBoundary& boundary) {
    auto out = open_out(path);
    out << "piece_label,alpha,x,y\n";
    out << std::setprecision(12);
    for (const auto& p : boundary.pieces) {
        const std::size_t n = p.pts.size();
        for (std::size_t i = 0; i < n; ++i) {
            double al = 0.0;
            if (p.is_curve && n > 1)
                al = p.alpha_begin + (p.alpha_end - p.alpha_begin) * double(i) / double(n - 1);
            out << piece_label(p.kind) << ',' << al << ',' << p.pts[i].x << ',' << p.pts[i].y
                << '\n';
        }
    }
}

namespace {

void svg_header(std::ostream& out, Vec2 lo, Vec2 hi, double scale, double pad) {
    const double w = (hi.x - lo.x) * scale + 2 * pad;
    const double h = (hi.y - lo.y) * scale + 2 * pad;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
        << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n";
}

std::string svg_poly(const std::vector<Vec2>& pts, Vec2 lo, Vec2 hi, double scale, double pad,
                     const char* color) {
    std::ostringstream os;
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    os << std::setprecision(8);
    for (const Vec2& p : pts)
        os << (p.x - lo.x) * scale + pad << ',' << (hi.y - p.y) * scale + pad << ' ';
    os << "\"/>\n";
    return os.str();
}

} // namespace

void write_shape_svg(const std::string& path, const SofaBoundary& boundary, double scale) {
    Vec2 lo, hi;
    boundary.bounding_box(lo, hi);
    const double pad = 20.0;
    auto out = open_out(path);
    svg_header(out, lo, hi, scale, pad);
    const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                            "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
    int k = 0;
    for (const auto& p : boundary.pieces)
        out << svg_poly(p.pts, lo, hi, scale, pad, colors[k++ % 10]);
    out << "</svg>\n";
}

void write_curves_svg(const std::string& path, const PathFunctions& rt, double scale) {
    std::vector<Vec2> rcurve, tcurve, rpcurve, tpcurve;
    for (std::size_t i = 0; i < rt.size(); ++i) {
        const double a = rt.alpha(i);
        rcurve.push_back({a, rt.r(i)});
        tcurve.push_back({a, rt.t(i)});
        rpcurve.push_back({a, rt.r1(i)});
        tpcurve.push_back({a, rt.t1(i)});
    }
    Vec2 lo{0.0, -1.0}, hi{rt.grid().b, 1.2};
    for (const auto& c : {rcurve, tcurve, rpcurve, tpcurve})
        for (const Vec2& p : c) {
            lo.y = std::min(lo.y, p.y - 0.05);
            hi.y = std::max(hi.y, p.y + 0.05);
        }
    const double pad = 20.0;
    auto out = open_out(path);
    svg_header(out, lo, hi, scale, pad);
    out << svg_poly({{lo.x, 0.0}, {hi.x, 0.0}}, lo, hi, scale, pad, "#cccccc");
    out << svg_poly(rcurve, lo, hi, scale, pad, "#1f77b4");
    out << svg_poly(tcurve, lo, hi, scale, pad, "#d62728");
    out << svg_poly(rpcurve, lo, hi, scale, pad, "#2ca02c");
    out << svg_poly(tpcurve, lo, hi, scale, pad, "#9467bd");
    out << "</svg>\n";
}

std::string area_report_json(const AreaReport& report) {
    json j;
    j["area"] = report.area;
    j["assumptions"] = {
        {"two_rp0", report.assumptions.e5_two_rp0},
        {"minus_two_rp_pi", report.assumptions.e6_minus_two_rppi},
        {"apcp_end", report.assumptions.e7_apcp_end},
        {"apbp_start", report.assumptions.e8_apbp_start},
        {"pass", report.assumptions.all_pass()},
    };
    j["residuals"] = {
        {"interior", report.max_interior_residual},
        {"boundary", report.max_boundary_residual},
    };
    j["feasible"] = report.feasible;
    return j.dump(2);
}

void write_area_report(const std::string& path, const AreaReport& report) {
    auto out = open_out(path);
    out << area_report_json(report) << '\n';
}

AreaReport read_area_report(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read file: " + path);
    json j;
    in >> j;
    AreaReport rep;
    rep.area = j.at("area").get<double>();
    rep.feasible = j.at("feasible").get<bool>();
    rep.max_interior_residual = j.at("residuals").at("interior").get<double>();
    rep.max_boundary_residual = j.at("residuals").at("boundary").get<double>();
    return rep;
}

void write_trace_jsonl(const std::string& path, const std::vector<TraceEntry>& trace) {
    auto out = open_out(path);
    for (const auto& e : trace) {
        json j;
        j["outer"] = e.outer;
        j["newton_iter"] = e.newton_iter;
        j["residual_norm"] = e.residual_norm;
        j["halvings"] = e.halvings;
        j["a1p"] = e.a1p;
        j["a2p"] = e.a2p;
        out << j.dump() << '\n';
    }
}

void write_manifest(const std::string& path, const RunManifest& m) {
    json j;
    j["command"] = m.command;
    j["scenario"] = m.scenario;
    j["n_points"] = m.n_points;
    j["inputs"] = m.inputs;
    j["outputs"] = m.outputs;
    j["wall_seconds"] = m.wall_seconds;
    j["outcome"] = m.outcome;
    if (!m.config_json.empty()) j["config"] = json::parse(m.config_json);
    auto out = open_out(path);
    out << j.dump(2) << '\n';
}

} // namespace sofa
