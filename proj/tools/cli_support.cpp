#include "cli_support.hpp"

#include "pointctl/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

namespace pointctl::cli {

namespace fs = std::filesystem;
using nlohmann::json;

void merge_config_file(RunConfig& cfg, const fs::path& file, const std::function<bool(const std::string&)>& given) {
    std::ifstream in(file);
    if (!in) throw DomainError("cannot read config file " + file.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw DomainError("config file " + file.string() + ": " + e.what());
    }
    if (!j.is_object()) throw DomainError("config file must hold a JSON object");
    auto take = [&](const char* key, auto& field) {
        if (j.contains(key) && !given(key)) j.at(key).get_to(field);
    };
    try {
        take("alpha", cfg.problem.alpha);
        take("mu", cfg.problem.mu);
        take("b", cfg.problem.b_bar);
        take("T", cfg.problem.T);
        take("K", cfg.K);
        take("N", cfg.N);
        take("tol", cfg.tol);
        take("M", cfg.M);
        take("degree", cfg.degree);
        take("knots", cfg.knots);
        take("dt", cfg.dt);
        take("scheme", cfg.scheme);
        take("u0", cfg.u0);
        take("control_model", cfg.control_model);
        if (j.contains("out") && !given("out")) cfg.out = j.at("out").get<std::string>();
    } catch (const json::exception& e) {
        throw DomainError("config file " + file.string() + ": " + e.what());
    }
}

void validate(const RunConfig& cfg) {
    cfg.problem.validate();
    if (cfg.K < 1) throw DomainError("K must be positive");
    if (cfg.N < 2) throw DomainError("N must be at least 2");
    if (!(cfg.tol > 0.0)) throw DomainError("tol must be positive");
    if (cfg.M < 4) throw DomainError("M must be at least 4");
    if (cfg.degree != 2 && cfg.degree != 3) throw DomainError("degree must be 2 or 3");
    if (!(cfg.dt > 0.0)) throw DomainError("dt must be positive");
    const double steps = cfg.problem.T / cfg.dt;
    if (std::fabs(steps - std::round(steps)) > 1e-12 * std::max(1.0, steps)) {
        throw DomainError("dt must divide T");
    }
    (void)parse_scheme(cfg.scheme);
    (void)parse_control_model(cfg.control_model);
    (void)parse_initial_data(cfg.u0);
}

Scheme parse_scheme(const std::string& s) {
    if (s == "implicit_euler" || s == "ie") return Scheme::implicit_euler;
    if (s == "crank_nicolson" || s == "cn") return Scheme::crank_nicolson;
    throw DomainError("unknown scheme '" + s + "' (implicit_euler | crank_nicolson)");
}

ControlModel parse_control_model(const std::string& s) {
    if (s == "collocation") return ControlModel::collocation;
    if (s == "spectral") return ControlModel::spectral;
    throw DomainError("unknown control model '" + s + "' (collocation | spectral)");
}

std::function<double(double)> parse_initial_data(const std::string& spec) {
    if (spec == "example1") return example_setup(1).u0;
    if (spec == "example2") return example_setup(2).u0;
    if (spec.rfind("sine:", 0) == 0) {
        double k = 0.0;
        double amp = 1.0;
        const int got = std::sscanf(spec.c_str() + 5, "%lf:%lf", &k, &amp);
        if (got >= 1 && std::isfinite(k) && std::isfinite(amp)) {
            return [k, amp](double x) { return amp * std::sin(k * std::numbers::pi * x); };
        }
    }
    throw DomainError("unknown initial data '" + spec + "' (sine:k[:amp] | example1 | example2)");
}

SplineSpace make_space(int degree, const std::string& knots) {
    if (knots == "x1") return knot_set_space(degree, KnotSet::x1);
    if (knots == "x2") return knot_set_space(degree, KnotSet::x2);
    if (knots == "x3") return knot_set_space(degree, KnotSet::x3);
    std::ifstream in(knots);
    if (!in) throw DomainError("knots must be x1, x2, x3 or a readable JSON file: " + knots);
    try {
        json j;
        in >> j;
        auto bp = j.at("breakpoints").get<std::vector<double>>();
        std::vector<int> mult = j.contains("multiplicities") ? j.at("multiplicities").get<std::vector<int>>()
                                                             : std::vector<int>(bp.size() > 2 ? bp.size() - 2 : 0, 1);
        return SplineSpace::with_multiplicities(degree, std::move(bp), std::move(mult));
    } catch (const json::exception& e) {
        throw DomainError("knot file " + knots + ": " + e.what());
    }
}

json number(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return "nan";
    return v > 0 ? "inf" : "-inf";
}

json numbers(std::span<const double> v) {
    json a = json::array();
    for (double x : v) a.push_back(number(x));
    return a;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_atomic(const fs::path& path, const std::string& contents) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << contents;
        out.flush();
        if (!out) throw std::runtime_error("write failed: " + tmp.string());
    }
    fs::rename(tmp, path);
}

void write_json(const fs::path& path, const json& j) { write_atomic(path, j.dump(2) + "\n"); }

std::string control_csv(const ControlSignal& h) {
    std::string s = "# K=" + std::to_string(h.K) + ",T=" + fmt(h.T) + ",residual_max=" + fmt(h.max_residual()) + "\n";
    s += "t,h\n";
    for (std::size_t i = 0; i < h.time_grid.size(); ++i) {
        s += fmt(h.time_grid[i]) + "," + fmt(h.values[i]) + "\n";
    }
    return s;
}

ControlSignal read_control_csv(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot read control file " + path.string());
    std::string line;
    ControlSignal h;
    double res = 0.0;
    if (!std::getline(in, line) || std::sscanf(line.c_str(), "# K=%d,T=%lf,residual_max=%lf", &h.K, &h.T, &res) != 3) {
        throw DomainError("control file: missing '# K=..,T=..,residual_max=..' header");
    }
    if (!std::getline(in, line) || line != "t,h") throw DomainError("control file: missing 't,h' column header");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        double t = 0.0;
        double v = 0.0;
        if (std::sscanf(line.c_str(), "%lf,%lf", &t, &v) != 2) throw DomainError("control file: bad row '" + line + "'");
        h.time_grid.push_back(t);
        h.values.push_back(v);
    }
    const std::size_t n = h.time_grid.size();
    if (n < 5 || h.time_grid.front() != 0.0 || std::fabs(h.time_grid.back() - h.T) > 1e-12 * h.T) {
        throw DomainError("control file: grid must run from 0 to T");
    }
    const double step = h.T / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        if (std::fabs(h.time_grid[i] - step * static_cast<double>(i)) > 1e-9 * h.T) {
            throw DomainError("control file: grid must be uniform");
        }
    }
    h.residuals = {res};
    return h;
}

}  // namespace pointctl::cli
