#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "geoindex/jump.hpp"
#include "geoindex/morse.hpp"

namespace geoindex {

inline constexpr int config_version = 1;

/// A configuration file: the sphere plus output preferences.
struct ConfigDocument {
    SphereConfiguration sphere;
    std::string output_format = "tsv";

    friend bool operator==(const ConfigDocument&, const ConfigDocument&) = default;
};

/// Parses and validates a configuration. Errors carry the line and JSON
/// pointer of the offending field: "line 7, /geodesics/0/descriptor: ...".
///
/// Schema (unknown keys are rejected at every level):
///
///   version                 1
///   n                       integer >= 2
///   bumpy                   boolean, default true
///   resolution_limit        integer, default 10000
///   curvature_assumption    optional {pinch, reversibility}, rationals as strings
///   geodesics[]             {label, initial_index, initial_nullity?, descriptor}
///   descriptor              {p_minus, p_zero, p_plus, q_minus, q_zero, q_plus,
///                            thetas, alphas, betas, hyperbolic_dim}, counts default 0
///   rotation number         "p/q" or {decimal, err, irrational}
///   output                  optional {format: "tsv" | "json"}
ConfigDocument parse_config(std::string_view text);

ConfigDocument load_config(const std::filesystem::path& path);

/// Canonical form: every field explicit, fixed key order, two-space indent,
/// trailing newline. parse_config(serialize_config(d)) == d.
std::string serialize_config(const ConfigDocument& doc);

/// Certificate file: {version, labels, N, M, m, xi, eps, delta}. labels must
/// match the configuration's geodesic order when a configuration is given.
JumpCertificate parse_certificate(std::string_view text, const SphereConfiguration* cfg = nullptr);

JumpCertificate load_certificate(const std::filesystem::path& path, const SphereConfiguration* cfg = nullptr);

std::string serialize_certificate(const JumpCertificate& cert, const SphereConfiguration& cfg);

/// Line (1-based) of every value in a JSON text, keyed by JSON pointer.
/// The text must already be valid JSON.
std::map<std::string, int> json_line_map(std::string_view text);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace geoindex
