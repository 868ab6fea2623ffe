#include "framescale/frame_io.hpp"

#include <fstream>
#include <sstream>

namespace framescale {

namespace {

using json = nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw FrameFileError(where + ": " + what);
}

double read_number(const json& j, const std::string& where) {
    if (!j.is_number()) fail(where, "expected a number");
    return j.get<double>();
}

// Line and column of a byte offset, both 1-based.
std::string location(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

Frame parse_frame_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        // e.byte points one past the offending character.
        const std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
        throw FrameFileError("invalid JSON at " + location(text, byte) + ": " + e.what());
    }
    if (!doc.is_object()) fail("<root>", "expected an object");

    if (!doc.contains("field")) fail("field", "missing");
    if (!doc["field"].is_string()) fail("field", "expected \"real\" or \"complex\"");
    const std::string field_name = doc["field"].get<std::string>();
    ScalarField field;
    if (field_name == "real") {
        field = ScalarField::Real;
    } else if (field_name == "complex") {
        field = ScalarField::Complex;
    } else {
        fail("field", "expected \"real\" or \"complex\", got \"" + field_name + "\"");
    }

    if (!doc.contains("d")) fail("d", "missing");
    if (!doc["d"].is_number_integer() || doc["d"].get<long long>() < 1)
        fail("d", "expected a positive integer");
    const auto d = static_cast<std::size_t>(doc["d"].get<long long>());

    if (!doc.contains("vectors")) fail("vectors", "missing");
    const json& vs = doc["vectors"];
    if (!vs.is_array()) fail("vectors", "expected an array of vectors");
    if (vs.empty()) fail("vectors", "need at least one vector");

    std::vector<Eigen::VectorXcd> vectors;
    vectors.reserve(vs.size());
    for (std::size_t i = 0; i < vs.size(); ++i) {
        const std::string vwhere = "vectors[" + std::to_string(i) + "]";
        const json& v = vs[i];
        if (!v.is_array()) fail(vwhere, "expected an array");
        if (v.size() != d)
            fail(vwhere, "expected " + std::to_string(d) + " entries, got " + std::to_string(v.size()));
        Eigen::VectorXcd x(static_cast<Eigen::Index>(d));
        for (std::size_t k = 0; k < d; ++k) {
            const std::string where = vwhere + "[" + std::to_string(k) + "]";
            const json& e = v[k];
            if (field == ScalarField::Real) {
                x(static_cast<Eigen::Index>(k)) = read_number(e, where);
            } else {
                if (!e.is_array() || e.size() != 2) fail(where, "expected a pair [re, im]");
                x(static_cast<Eigen::Index>(k)) =
                    cdouble(read_number(e[0], where + "[0]"), read_number(e[1], where + "[1]"));
            }
        }
        vectors.push_back(std::move(x));
    }

    std::vector<std::string> labels;
    if (doc.contains("labels")) {
        const json& ls = doc["labels"];
        if (!ls.is_array()) fail("labels", "expected an array of strings");
        if (ls.size() != vectors.size())
            fail("labels", "expected " + std::to_string(vectors.size()) + " labels, got " +
                               std::to_string(ls.size()));
        for (std::size_t i = 0; i < ls.size(); ++i) {
            if (!ls[i].is_string()) fail("labels[" + std::to_string(i) + "]", "expected a string");
            labels.push_back(ls[i].get<std::string>());
        }
    }

    try {
        return Frame(field, d, std::move(vectors), std::move(labels));
    } catch (const Error& e) {
        throw FrameFileError(std::string("vectors: ") + e.what());
    }
}

Frame read_frame_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FrameFileError(path.string() + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_frame_json(buf.str());
    } catch (const FrameFileError& e) {
        throw FrameFileError(path.string() + ": " + e.what());
    }
}

nlohmann::ordered_json frame_to_json(const Frame& f) {
    nlohmann::ordered_json j;
    j["field"] = std::string(to_string(f.field()));
    j["d"] = f.dim();
    auto vectors = nlohmann::ordered_json::array();
    for (const auto& v : f.vectors()) {
        auto row = nlohmann::ordered_json::array();
        for (Eigen::Index k = 0; k < v.size(); ++k) {
            if (f.field() == ScalarField::Real) {
                row.push_back(v(k).real());
            } else {
                row.push_back({v(k).real(), v(k).imag()});
            }
        }
        vectors.push_back(std::move(row));
    }
    j["vectors"] = std::move(vectors);
    if (!f.labels().empty()) j["labels"] = f.labels();
    return j;
}

std::string write_frame_json(const Frame& f) { return frame_to_json(f).dump(2) + "\n"; }

}  // namespace framescale
