#ifndef NOUNCLASS_IO_HPP
#define NOUNCLASS_IO_HPP

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "core.hpp"

/**
 * @file io.hpp
 *
 * @brief Line-delimited JSON helpers, provenance headers and prediction files.
 */

namespace nounclass::io {

using json = nlohmann::json;

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "' for reading");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline void write_file(const std::filesystem::path& path, std::string_view content) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) {
        throw IoError("write to '" + path.string() + "' failed");
    }
}

/// Split on '\n', dropping a trailing '\r' and blank lines.
inline std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (!line.empty()) lines.push_back(line);
        if (end == text.size()) break;
        start = end + 1;
    }
    return lines;
}

/// A numeric literal too large for a double (e.g. 1e400); its value would be infinite.
class NumberOverflow : public ValidationError {
public:
    using ValidationError::ValidationError;
};

inline json parse_line(std::string_view line, const std::string& source, std::size_t lineno) {
    try {
        return json::parse(line);
    } catch (const json::parse_error& e) {
        throw ValidationError(source + ":" + std::to_string(lineno) + ": malformed JSON record (" + e.what() + ")");
    } catch (const json::out_of_range& e) {
        throw NumberOverflow(source + ":" + std::to_string(lineno) + ": number out of range (" + e.what() + ")");
    }
}

/**
 * Provenance block written as the first line of every artifact.
 * Holds no timestamps so identical runs produce identical bytes.
 */
inline json make_meta(std::string_view stage, const json& flags) {
    json meta;
    meta["tool"] = "nounclass";
    meta["version"] = std::string(tool_version);
    meta["stage"] = std::string(stage);
    meta["flags"] = flags;
    return meta;
}

inline bool is_meta(const json& record) {
    return record.is_object() && record.contains("meta");
}

/// Fixed-precision real formatting (at least `digits` significant digits).
inline void append_real(std::string& out, double value, int digits = 9) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, digits);
    out.append(buf, res.ptr);
}

inline json class_to_json(NounClass c) {
    if (c.is_unknown()) return "unknown";
    return c.id();
}

/**
 * Accepts an integer, a decimal string, or "unknown".
 */
inline NounClass class_from_json(const json& value) {
    if (value.is_number_integer()) {
        return NounClass(value.get<int>());
    }
    if (value.is_string()) {
        const auto& s = value.get_ref<const std::string&>();
        if (s == "unknown") return NounClass::unknown();
        int id = 0;
        auto res = std::from_chars(s.data(), s.data() + s.size(), id);
        if (res.ec == std::errc() && res.ptr == s.data() + s.size()) {
            return NounClass(id);
        }
    }
    throw ValidationError("invalid noun class id: " + value.dump());
}

/**
 * Build a JSONL payload from a meta block and records.
 */
inline std::string render_jsonl(const json& meta, const std::vector<json>& records) {
    std::string out;
    out += json{{"meta", meta}}.dump();
    out += '\n';
    for (const auto& r : records) {
        out += r.dump();
        out += '\n';
    }
    return out;
}

inline json prediction_to_json(const Prediction& p) {
    return json{
        {"word", p.word},
        {"class", class_to_json(p.noun_class)},
        {"confidence", p.confidence},
        {"method", std::string(method_name(p.method))},
    };
}

inline Prediction prediction_from_json(const json& r, const std::string& source, std::size_t lineno) {
    try {
        Prediction p;
        p.word = r.at("word").get<std::string>();
        p.noun_class = class_from_json(r.at("class"));
        p.confidence = r.at("confidence").get<double>();
        auto name = r.at("method").get<std::string>();
        auto m = parse_method(name);
        if (!m) {
            throw ValidationError("unknown method '" + name + "'");
        }
        p.method = *m;
        return p;
    } catch (const json::exception& e) {
        throw ValidationError(source + ":" + std::to_string(lineno) + ": bad prediction record (" + e.what() + ")");
    }
}

inline std::vector<Prediction> parse_predictions(std::string_view text, const std::string& source) {
    std::vector<Prediction> out;
    std::size_t lineno = 0;
    for (auto line : split_lines(text)) {
        ++lineno;
        auto record = parse_line(line, source, lineno);
        if (is_meta(record)) continue;
        out.push_back(prediction_from_json(record, source, lineno));
    }
    return out;
}

inline std::vector<Prediction> load_predictions(const std::filesystem::path& path) {
    return parse_predictions(read_file(path), path.string());
}

}

#endif
