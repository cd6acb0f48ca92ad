#include "cellident/io.hpp"

#include "cellident/errors.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace cellident {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) out.push_back(field);
    return out;
}

double parse_num(const std::string& s, const std::string& path, std::size_t lineno) {
    try {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        return v;
    } catch (const std::exception&) {
        throw ParseError(path, lineno, "numeric parse failure in '" + s + "'");
    }
}

} // namespace

VoltageTrace load_trace(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path, 0, "cannot open file");
    std::string line;
    std::size_t lineno = 0;
    VoltageTrace t;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto fields = split_csv(line);
        if (lineno == 1) {
            if (fields.size() != 3 || fields[0] != "time_s" || fields[1] != "current_A" ||
                fields[2] != "voltage_V")
                throw ParseError(path, 1, "expected header time_s,current_A,voltage_V");
            continue;
        }
        if (fields.size() != 3) throw ParseError(path, lineno, "expected three columns");
        double time = parse_num(fields[0], path, lineno);
        if (!t.time.empty() && !(time > t.time.back()))
            throw ParseError(path, lineno, "time must strictly increase");
        t.time.push_back(time);
        t.current.push_back(parse_num(fields[1], path, lineno));
        t.voltage.push_back(parse_num(fields[2], path, lineno));
    }
    if (t.time.empty()) throw ParseError(path, lineno, "no samples");
    t.validate();
    return t;
}

void save_trace(const VoltageTrace& trace, const std::string& path) {
    trace.validate();
    std::ofstream out(path);
    if (!out) throw ParseError(path, 0, "cannot open file for writing");
    out << "time_s,current_A,voltage_V\n";
    out.precision(9);
    for (std::size_t i = 0; i < trace.size(); ++i)
        out << trace.time[i] << "," << trace.current[i] << "," << trace.voltage[i] << "\n";
}

CurrentProfile load_profile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path, 0, "cannot open file");
    std::string line;
    std::size_t lineno = 0;
    std::vector<double> time, current;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto fields = split_csv(line);
        if (lineno == 1) {
            if (fields.size() != 2 || fields[0] != "time_s" || fields[1] != "current_A")
                throw ParseError(path, 1, "expected header time_s,current_A");
            continue;
        }
        if (fields.size() != 2) throw ParseError(path, lineno, "expected two columns");
        double t = parse_num(fields[0], path, lineno);
        if (!time.empty() && !(t > time.back()))
            throw ParseError(path, lineno, "time must strictly increase");
        time.push_back(t);
        current.push_back(parse_num(fields[1], path, lineno));
    }
    if (time.size() < 2) throw ParseError(path, lineno, "need at least two samples");
    CurrentProfile p;
    p.dt = time[1] - time[0];
    for (std::size_t i = 1; i + 1 < time.size(); ++i) {
        double step = time[i + 1] - time[i];
        if (std::abs(step - p.dt) > 1e-9 * std::max(1.0, std::abs(p.dt)))
            throw ParseError(path, i + 3, "profile sampling must be uniform");
    }
    p.samples = std::move(current);
    p.label = path;
    return p;
}

void save_profile(const CurrentProfile& profile, const std::string& path) {
    profile.validate();
    std::ofstream out(path);
    if (!out) throw ParseError(path, 0, "cannot open file for writing");
    out << "time_s,current_A\n";
    out.precision(9);
    for (std::size_t i = 0; i < profile.size(); ++i)
        out << profile.dt * static_cast<double>(i + 1) << "," << profile.samples[i] << "\n";
}

} // namespace cellident
