#pragma once

/// Deterministic output writers.  Reports are JSON with keys emitted in
/// sorted order and all numbers printed with 17 significant digits, so the
/// same run produces byte-identical files.  Trajectories are CSV with LF
/// line endings.

#include <cstdio>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "sim.hpp"

namespace dichro {

struct JsonValue;
using JsonObject = std::map<std::string, JsonValue>;  // std::map keeps keys sorted
using JsonArray = std::vector<JsonValue>;

struct JsonValue {
    std::variant<std::nullptr_t, bool, double, std::string, JsonArray, JsonObject> v;

    JsonValue() : v(nullptr) {}
    JsonValue(bool b) : v(b) {}
    JsonValue(double d) : v(d) {}
    JsonValue(int i) : v(static_cast<double>(i)) {}
    JsonValue(const char* s) : v(std::string(s)) {}
    JsonValue(std::string s) : v(std::move(s)) {}
    JsonValue(JsonArray a) : v(std::move(a)) {}
    JsonValue(JsonObject o) : v(std::move(o)) {}
};

inline std::string format_double(double d) {
    if (!std::isfinite(d)) throw std::runtime_error("report: non-finite number");
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", d);
    return buf;
}

inline void write_json(std::string& out, const JsonValue& val, int indent) {
    std::string pad(2 * indent, ' ');
    std::string pad1(2 * (indent + 1), ' ');
    if (std::holds_alternative<std::nullptr_t>(val.v)) {
        out += "null";
    } else if (std::holds_alternative<bool>(val.v)) {
        out += std::get<bool>(val.v) ? "true" : "false";
    } else if (std::holds_alternative<double>(val.v)) {
        out += format_double(std::get<double>(val.v));
    } else if (std::holds_alternative<std::string>(val.v)) {
        out += '"';
        for (char c : std::get<std::string>(val.v)) {
            if (c == '"' || c == '\\') out += '\\';
            out += c;
        }
        out += '"';
    } else if (std::holds_alternative<JsonArray>(val.v)) {
        const JsonArray& a = std::get<JsonArray>(val.v);
        if (a.empty()) {
            out += "[]";
            return;
        }
        out += "[";
        for (std::size_t k = 0; k < a.size(); ++k) {
            out += k ? ",\n" : "\n";
            out += pad1;
            write_json(out, a[k], indent + 1);
        }
        out += "\n" + pad + "]";
    } else {
        const JsonObject& o = std::get<JsonObject>(val.v);
        if (o.empty()) {
            out += "{}";
            return;
        }
        out += "{";
        bool first = true;
        for (const auto& [key, value] : o) {
            out += first ? "\n" : ",\n";
            first = false;
            out += pad1 + '"' + key + "\": ";
            write_json(out, value, indent + 1);
        }
        out += "\n" + pad + "}";
    }
}

inline std::string json_to_string(const JsonValue& val) {
    std::string out;
    write_json(out, val, 0);
    out += '\n';
    return out;
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    out << content;
    if (!out) throw std::runtime_error(path + ": write failed");
}

inline JsonArray json_vec3(const Vec3& v) { return {v.x, v.y, v.z}; }

/// CSV of trajectory records: one row per sampled point, LF endings,
/// exactly inputs x elements x trace_samples rows.
inline std::string trajectory_csv(const std::vector<TrajectoryRecord>& records) {
    std::string out = "state_index,element_index,t,s1,s2,s3,intensity\n";
    for (const TrajectoryRecord& r : records) {
        out += std::to_string(r.state_index);
        out += ',';
        out += std::to_string(r.element_index);
        out += ',';
        out += format_double(r.t);
        out += ',';
        out += format_double(r.point.s.x);
        out += ',';
        out += format_double(r.point.s.y);
        out += ',';
        out += format_double(r.point.s.z);
        out += ',';
        out += format_double(r.intensity);
        out += '\n';
    }
    return out;
}

}  // namespace dichro
