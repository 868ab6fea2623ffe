#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "framescale/frame.hpp"
#include "framescale/hermitian.hpp"
#include "framescale/scaling.hpp"

namespace framescale::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitGuardExceeded = 3;

struct AnalyzeOptions {
    Tolerances tol;
    SearchGuard guard;
    bool skip_spark = false;
    bool skip_complement = false;
};

/// Rounds to 12 significant digits; the value every report prints.
double report_number(double x);

nlohmann::ordered_json analysis_report(const Frame& f, const AnalyzeOptions& opts);
nlohmann::ordered_json vertices_report(const Frame& f, const AnalyzeOptions& opts);
nlohmann::ordered_json verify_report(const Frame& f, const Eigen::VectorXd& weights,
                                     const AnalyzeOptions& opts, bool decompose);

/// Pretty-printed JSON with a trailing newline.
std::string render_json(const nlohmann::ordered_json& report);
/// One "path: value" line per leaf; numeric arrays stay on one line.
std::string render_text(const nlohmann::ordered_json& report);

/// Entry point behind the framescale executable. Subcommands: analyze,
/// vertices, verify, gen. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace framescale::cli
