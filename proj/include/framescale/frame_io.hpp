#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "framescale/errors.hpp"
#include "framescale/frame.hpp"

namespace framescale {

/// Malformed frame file. The message names the offending location, either a
/// line/column for JSON syntax errors or a JSON path such as vectors[2][1].
class FrameFileError : public Error {
public:
    using Error::Error;
};

/// Frame file layout:
///   {"field": "real"|"complex", "d": <int>, "vectors": [[...], ...], "labels": [...]}
/// Real entries are numbers, complex entries two-element arrays [re, im].
/// "labels" is optional.
Frame parse_frame_json(std::string_view text);
Frame read_frame_file(const std::filesystem::path& path);

nlohmann::ordered_json frame_to_json(const Frame& f);

/// Frame file text with full double precision, so parsing it back gives the
/// same frame.
std::string write_frame_json(const Frame& f);

}  // namespace framescale
