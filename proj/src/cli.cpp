#include "framescale/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "framescale/errors.hpp"
#include "framescale/frame_io.hpp"

namespace framescale::cli {

namespace {

using ojson = nlohmann::ordered_json;

std::string format12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

ojson number(double x) {
    if (!std::isfinite(x)) return nullptr;
    return report_number(x);
}

ojson number_array(const Eigen::VectorXd& v) {
    auto a = ojson::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(number(v(i)));
    return a;
}

ojson index_array(const std::vector<std::size_t>& idx) {
    auto a = ojson::array();
    for (std::size_t i : idx) a.push_back(i);
    return a;
}

ojson tolerances_json(const AnalyzeOptions& opts) {
    ojson t;
    t["rank_rel"] = number(opts.tol.rank_rel);
    t["residual_abs"] = number(opts.tol.residual_abs);
    t["nonneg_abs"] = number(opts.tol.nonneg_abs);
    t["dedup_abs"] = number(opts.tol.dedup_abs);
    t["max_n"] = opts.guard.max_n;
    t["force"] = opts.guard.force;
    return t;
}

ojson header(const Frame& f) {
    ojson j;
    j["field"] = std::string(to_string(f.field()));
    j["d"] = f.dim();
    j["n"] = f.size();
    if (!f.labels().empty()) j["labels"] = f.labels();
    return j;
}

void render_text_into(const ojson& j, const std::string& path, std::ostringstream& os) {
    auto scalar = [](const ojson& v) -> std::string {
        if (v.is_number_float()) return format12(v.get<double>());
        return v.dump();
    };
    if (j.is_object()) {
        for (const auto& [key, value] : j.items())
            render_text_into(value, path.empty() ? key : path + "." + key, os);
        return;
    }
    if (j.is_array()) {
        const bool flat = std::all_of(j.begin(), j.end(), [](const ojson& e) { return e.is_primitive(); });
        if (flat) {
            os << path << ": [";
            for (std::size_t i = 0; i < j.size(); ++i) os << (i ? ", " : "") << scalar(j[i]);
            os << "]\n";
            return;
        }
        if (j.empty()) os << path << ": []\n";
        for (std::size_t i = 0; i < j.size(); ++i)
            render_text_into(j[i], path + "[" + std::to_string(i) + "]", os);
        return;
    }
    os << path << ": " << scalar(j) << "\n";
}

}  // namespace

double report_number(double x) {
    if (!std::isfinite(x)) return x;
    const double r = std::strtod(format12(x).c_str(), nullptr);
    return r == 0.0 ? 0.0 : r;
}

ojson analysis_report(const Frame& f, const AnalyzeOptions& opts) {
    const TightnessInfo tight = tightness(f, opts.tol);
    const ScalingOutcome outcome = analyze_scaling(f, opts.tol, opts.guard);

    ojson r = header(f);
    ojson t;
    t["is_frame"] = tight.is_frame;
    t["A"] = number(tight.lower_bound);
    t["B"] = number(tight.upper_bound);
    t["is_tight"] = tight.is_tight;
    t["is_parseval"] = tight.is_parseval;
    r["tightness"] = std::move(t);
    r["outer_products_independent"] = outcome.diagnostics.outer_products_independent;
    r["scalable"] = outcome.status != ScalingStatus::NotScalable;
    r["status"] = std::string(to_string(outcome.status));

    ojson residuals;
    residuals["least_squares"] = nullptr;
    residuals["unique_scaling"] = nullptr;
    residuals["minimal_scalings"] = nullptr;

    if (outcome.status == ScalingStatus::UniqueScaling) {
        r["unique_scaling"] = number_array(outcome.scaling->weights);
        residuals["unique_scaling"] = number(verify_scaling(f, outcome.scaling->weights, opts.tol).residual);
    } else {
        r["unique_scaling"] = nullptr;
    }
    if (outcome.diagnostics.outer_products_independent) {
        residuals["least_squares"] = number(outcome.diagnostics.residual);
    }
    if (outcome.polytope) {
        auto list = ojson::array();
        auto res = ojson::array();
        for (const ScalingVector& s : outcome.polytope->scalings()) {
            list.push_back(number_array(s.weights));
            res.push_back(number(verify_scaling(f, s.weights, opts.tol).residual));
        }
        r["minimal_scalings"] = std::move(list);
        residuals["minimal_scalings"] = std::move(res);
    } else {
        r["minimal_scalings"] = nullptr;
    }

    if (opts.skip_spark) {
        r["spark"] = nullptr;
        r["full_spark"] = nullptr;
    } else {
        r["spark"] = spark(f, opts.tol, opts.guard);
        r["full_spark"] = is_full_spark(f, opts.tol, opts.guard);
    }
    r["complement_property"] =
        opts.skip_complement ? ojson(nullptr) : ojson(complement_property(f, opts.tol, opts.guard));
    r["outer_spark"] = opts.skip_spark ? ojson(nullptr) : ojson(outer_spark(f, opts.tol, opts.guard));
    r["tolerances"] = tolerances_json(opts);
    r["residuals"] = std::move(residuals);
    return r;
}

ojson vertices_report(const Frame& f, const AnalyzeOptions& opts) {
    const ScalingPolytope P = enumerate_minimal_scalings(f, opts.tol, opts.guard);
    ojson r = header(f);
    r["feasible"] = P.feasible();
    auto vs = ojson::array();
    for (std::size_t k = 0; k < P.vertices.size(); ++k) {
        const ScalingVector s = P.scaling(k);
        ojson v;
        v["support"] = index_array(P.supports[k]);
        v["polytope_point"] = number_array(P.vertices[k].weights);
        v["scaling"] = number_array(s.weights);
        v["residual"] = number(verify_scaling(f, s.weights, opts.tol).residual);
        vs.push_back(std::move(v));
    }
    r["vertices"] = std::move(vs);
    r["tolerances"] = tolerances_json(opts);
    return r;
}

ojson verify_report(const Frame& f, const Eigen::VectorXd& weights, const AnalyzeOptions& opts,
                    bool decompose) {
    const VerifyResult v = verify_scaling(f, weights, opts.tol);
    ojson r = header(f);
    r["weights"] = number_array(weights);
    r["residual"] = number(v.residual);
    r["ok"] = v.ok;
    if (decompose) {
        if (v.ok) {
            const ScalingPolytope P = enumerate_minimal_scalings(f, opts.tol, opts.guard);
            const ScalingVector w{weights, ScalingKind::ExactScaling};
            auto terms = ojson::array();
            for (const DecompositionTerm& t : decompose_scaling(f, w, P, opts.tol)) {
                ojson term;
                term["vertex"] = t.vertex;
                term["support"] = index_array(P.supports[t.vertex]);
                term["coefficient"] = number(t.coefficient);
                term["scaling"] = number_array(P.scaling(t.vertex).weights);
                terms.push_back(std::move(term));
            }
            r["decomposition"] = std::move(terms);
        } else {
            r["decomposition"] = nullptr;
        }
    }
    r["tolerances"] = tolerances_json(opts);
    return r;
}

std::string render_json(const ojson& report) { return report.dump(2) + "\n"; }

std::string render_text(const ojson& report) {
    std::ostringstream os;
    render_text_into(report, "", os);
    return os.str();
}

namespace {

void add_common_flags(CLI::App& cmd, AnalyzeOptions& opts, std::string& input) {
    cmd.add_option("input", input, "Frame file (JSON)")->required();
    cmd.add_option("--tol-rank", opts.tol.rank_rel, "Relative singular value cutoff for rank");
    cmd.add_option("--tol-residual", opts.tol.residual_abs, "Accepted residual for scalings");
    cmd.add_option("--tol-nonneg", opts.tol.nonneg_abs, "Slack under which a weight counts as zero");
    cmd.add_option("--tol-dedup", opts.tol.dedup_abs, "Distance under which two vertices coincide");
    cmd.add_option("--max-n", opts.guard.max_n, "Largest n for exhaustive subset searches");
    cmd.add_flag("--force", opts.guard.force, "Run exhaustive searches beyond --max-n");
}

void add_format_flags(CLI::App& cmd, bool& text) {
    auto* json_flag = cmd.add_flag("--json", "JSON output (default)");
    auto* text_flag = cmd.add_flag("--text", text, "Plain text output");
    json_flag->excludes(text_flag);
}

Eigen::VectorXd read_weights_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FrameFileError(path + ": cannot open weights file");
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw FrameFileError(path + ": invalid JSON: " + e.what());
    }
    if (!j.is_array()) throw FrameFileError(path + ": expected a JSON array of numbers");
    Eigen::VectorXd w(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number())
            throw FrameFileError(path + ": [" + std::to_string(i) + "]: expected a number");
        w(static_cast<Eigen::Index>(i)) = j[i].get<double>();
    }
    return w;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Scalability analysis of finite frames", "framescale"};
    app.require_subcommand(1);

    AnalyzeOptions opts;
    std::string input;
    bool text = false;

    auto* analyze = app.add_subcommand("analyze", "Tightness, scalability and spark diagnostics");
    add_common_flags(*analyze, opts, input);
    add_format_flags(*analyze, text);
    analyze->add_flag("--skip-spark", opts.skip_spark, "Skip spark, full spark and outer spark");
    analyze->add_flag("--skip-complement", opts.skip_complement, "Skip the complement property");

    auto* vertices = app.add_subcommand("vertices", "Minimal scalings (vertices of the scaling polytope)");
    add_common_flags(*vertices, opts, input);
    add_format_flags(*vertices, text);

    std::vector<double> inline_weights;
    std::string weights_file;
    bool decompose = false;
    auto* verify = app.add_subcommand("verify", "Check a candidate scaling");
    add_common_flags(*verify, opts, input);
    add_format_flags(*verify, text);
    auto* w_inline = verify->add_option("--weights", inline_weights, "Comma-separated weights")
                         ->delimiter(',');
    auto* w_file = verify->add_option("--weights-file", weights_file, "JSON array of weights");
    w_inline->excludes(w_file);
    verify->add_flag("--decompose", decompose,
                     "Also write the scaling as a convex combination of minimal scalings");

    std::size_t gen_d = 0;
    std::size_t gen_n = 0;
    std::string gen_field = "complex";
    std::uint64_t gen_seed = 0;
    bool gen_unit = false;
    std::string gen_out;
    auto* gen = app.add_subcommand("gen", "Write a random Gaussian frame");
    gen->add_option("--d", gen_d, "Dimension")->required()->check(CLI::PositiveNumber);
    gen->add_option("--n", gen_n, "Number of vectors")->required()->check(CLI::PositiveNumber);
    gen->add_option("--field", gen_field, "real or complex")->check(CLI::IsMember({"real", "complex"}));
    gen->add_option("--seed", gen_seed, "Generator seed");
    gen->add_flag("--unit-norm", gen_unit, "Normalize every vector");
    gen->add_option("--out", gen_out, "Output path (default: stdout)");

    std::vector<std::string> argv_storage;
    argv_storage.reserve(args.size() + 1);
    argv_storage.emplace_back("framescale");
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_storage) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }

    auto emit = [&](const ojson& report) { out << (text ? render_text(report) : render_json(report)); };

    try {
        if (gen->parsed()) {
            const ScalarField field = gen_field == "real" ? ScalarField::Real : ScalarField::Complex;
            const std::string body = write_frame_json(random_frame(gen_d, gen_n, field, gen_seed, gen_unit));
            if (gen_out.empty()) {
                out << body;
            } else {
                std::ofstream file(gen_out, std::ios::binary | std::ios::trunc);
                if (!(file << body) || !file.flush()) {
                    err << "error: cannot write " << gen_out << "\n";
                    return kExitInputError;
                }
            }
            return kExitOk;
        }

        const Frame f = read_frame_file(input);
        opts.tol.validate(f.matrix_space_dim());
        if (analyze->parsed()) {
            emit(analysis_report(f, opts));
        } else if (vertices->parsed()) {
            emit(vertices_report(f, opts));
        } else if (verify->parsed()) {
            Eigen::VectorXd w;
            if (!weights_file.empty()) {
                w = read_weights_file(weights_file);
            } else if (w_inline->count() > 0) {
                w = Eigen::Map<const Eigen::VectorXd>(inline_weights.data(),
                                                      static_cast<Eigen::Index>(inline_weights.size()));
            } else {
                err << "error: verify needs --weights or --weights-file\n";
                return kExitInputError;
            }
            emit(verify_report(f, w, opts, decompose));
        }
        return kExitOk;
    } catch (const ExponentialGuardError& e) {
        err << "error: " << e.what() << "\n";
        return kExitGuardExceeded;
    } catch (const FrameFileError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const DimensionError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace framescale::cli
