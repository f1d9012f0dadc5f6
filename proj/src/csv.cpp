#include "dimerctl/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "dimerctl/errors.hpp"

namespace dimerctl {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw IoError("write failed: " + path.string());
}

// 17 significant digits: enough for the shortest round-trippable decimal of
// any double, so reading the file back reproduces the bits.
std::string real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    std::istringstream in(line);
    while (std::getline(in, cur, ',')) fields.push_back(cur);
    return fields;
}

double parse_real(const std::string& field, const std::filesystem::path& path, std::size_t line) {
    char* end = nullptr;
    const double v = std::strtod(field.c_str(), &end);
    if (end == field.c_str() || *end != '\0')
        throw IoError("bad numeric field at " + path.string() + ":" + std::to_string(line));
    return v;
}

}  // namespace

void write_trace_csv(const EnsembleTrace& trace, const std::filesystem::path& path) {
    if (trace.size() == 0) throw std::invalid_argument("write_trace_csv: empty trace");
    auto out = open_out(path);
    out << "t,mean_x1,mean_x2,var_x1,var_x2,u,I\n";
    for (std::size_t i = 0; i < trace.size(); ++i) {
        out << real(trace.time[i]) << ',' << real(trace.mean_x1[i]) << ','
            << real(trace.mean_x2[i]) << ',' << real(trace.var_x1[i]) << ','
            << real(trace.var_x2[i]) << ',' << real(trace.u[i]) << ',' << real(trace.integ[i])
            << '\n';
    }
    finish(out, path);
}

EnsembleTrace read_trace_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open for reading: " + path.string());
    std::string line;
    if (!std::getline(in, line) || line != "t,mean_x1,mean_x2,var_x1,var_x2,u,I")
        throw IoError("unexpected header in " + path.string());

    EnsembleTrace trace;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto fields = split(line);
        if (fields.size() != 7)
            throw IoError("expected 7 fields at " + path.string() + ":" + std::to_string(lineno));
        trace.time.push_back(parse_real(fields[0], path, lineno));
        trace.mean_x1.push_back(parse_real(fields[1], path, lineno));
        trace.mean_x2.push_back(parse_real(fields[2], path, lineno));
        trace.var_x1.push_back(parse_real(fields[3], path, lineno));
        trace.var_x2.push_back(parse_real(fields[4], path, lineno));
        trace.u.push_back(parse_real(fields[5], path, lineno));
        trace.integ.push_back(parse_real(fields[6], path, lineno));
    }
    if (trace.size() >= 2) trace.ts = trace.time[1] - trace.time[0];
    return trace;
}

void write_cell_path_csv(const EnsembleTrace& trace, const std::filesystem::path& path) {
    if (trace.tracked_cell < 0 || trace.cell_path.empty())
        throw std::invalid_argument("write_cell_path_csv: trace has no tracked cell");
    auto out = open_out(path);
    out << "t,x1,x2\n";
    for (std::size_t i = 0; i < trace.cell_path.size(); ++i) {
        out << real(trace.time[i]) << ',' << trace.cell_path[i].x1 << ','
            << trace.cell_path[i].x2 << '\n';
    }
    finish(out, path);
}

void write_sweep_csv(const std::vector<SweepRow>& rows, const std::filesystem::path& path) {
    if (rows.empty()) throw std::invalid_argument("write_sweep_csv: empty table");
    auto out = open_out(path);
    out << "k1,mean_x1,mean_x2,var_x1\n";
    for (const SweepRow& r : rows) {
        out << real(r.k1) << ',' << real(r.mean_x1) << ',' << real(r.mean_x2) << ','
            << real(r.var_x1) << '\n';
    }
    finish(out, path);
}

void write_moments_csv(const MomentTrajectory& traj, const std::filesystem::path& path) {
    if (traj.size() == 0) throw std::invalid_argument("write_moments_csv: empty trajectory");
    const bool closed = !traj.integ.empty();
    auto out = open_out(path);
    out << (closed ? "t,x1,x2,I,u\n" : "t,x1,x2\n");
    for (std::size_t i = 0; i < traj.size(); ++i) {
        out << real(traj.time[i]) << ',' << real(traj.x1[i]) << ',' << real(traj.x2[i]);
        if (closed) out << ',' << real(traj.integ[i]) << ',' << real(traj.u[i]);
        out << '\n';
    }
    finish(out, path);
}

}  // namespace dimerctl
