#pragma once

#include "pointctl/collocation.hpp"
#include "pointctl/experiments.hpp"
#include "pointctl/splines.hpp"

#include <json.hpp>

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace pointctl::cli {

inline constexpr int kSchemaVersion = 1;

enum ExitCode : int { ok = 0, invalid_params = 2, membership = 3, conditioning = 4, solver = 5 };

struct RunConfig {
    ProblemParams problem{};
    int K = 8;
    int N = 200;
    double tol = 1e-9;
    int M = 2000;
    int degree = 2;
    std::string knots = "x1";  ///< x1 | x2 | x3 | path to a JSON knot file
    double dt = 1.0 / 50.0;
    std::string scheme = "implicit_euler";
    std::string u0 = "sine:2:3";
    std::string control_model = "collocation";
    std::filesystem::path out = ".";
};

/// Fills unset fields of `cfg` from a JSON config file; `given(key)` reports
/// whether the corresponding flag was passed on the command line (flags win).
void merge_config_file(RunConfig& cfg, const std::filesystem::path& file,
                       const std::function<bool(const std::string&)>& given);

/// Throws DomainError on an inconsistent configuration.
void validate(const RunConfig& cfg);

[[nodiscard]] Scheme parse_scheme(const std::string& s);
[[nodiscard]] ControlModel parse_control_model(const std::string& s);

/// "sine:k[:amp]" is amp sin(k pi x); "example1" / "example2" are the worked examples' data.
[[nodiscard]] std::function<double(double)> parse_initial_data(const std::string& spec);

/// Knot-set names or a JSON file {"degree"?, "breakpoints": [...], "multiplicities": [...]}.
[[nodiscard]] SplineSpace make_space(int degree, const std::string& knots);

/// Finite numbers as numbers, non-finite as the strings "inf", "-inf", "nan".
[[nodiscard]] nlohmann::json number(double v);
[[nodiscard]] nlohmann::json numbers(std::span<const double> v);

[[nodiscard]] std::string fmt(double v);  ///< %.17g

/// Writes through a temporary file in the same directory, then renames.
void write_atomic(const std::filesystem::path& path, const std::string& contents);
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

[[nodiscard]] std::string control_csv(const ControlSignal& h);
/// Reads a file written by control_csv. Throws DomainError on malformed input.
[[nodiscard]] ControlSignal read_control_csv(const std::filesystem::path& path);

}  // namespace pointctl::cli
