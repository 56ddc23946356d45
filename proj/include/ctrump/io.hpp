#pragma once

#include "ctrump/dist.hpp"

#include <json.hpp>

#include <string>

namespace ctrump {

using Json = nlohmann::ordered_json;

struct ParseOptions {
    /// Accept JSON floating-point numbers, converted exactly from their
    /// shortest decimal representation. Strings and integers are always
    /// accepted.
    bool allow_floats = false;
};

/// One entry: a rational or decimal string, an integer, or (opt-in) a float.
/// `where` names the field in error messages.
Rational parse_entry(const Json& value, const std::string& where, const ParseOptions& options = {});

/// {"p": [...]} (any single key holding an array) or a bare array.
Dist parse_dist(const Json& doc, const ParseOptions& options = {});

/// {"tensor": nested arrays, "labels": [...]}; the nesting depth gives the
/// number of subsystems.
JointDist parse_joint(const Json& doc, const ParseOptions& options = {});

/// Reads a file holding either form; joints are flattened. Throws
/// DomainError with the file name and JSON position on failure.
Dist load_dist(const std::string& path, const ParseOptions& options = {});

Json to_json(const Rational& r);
Json to_json(const Dist& p);
Json to_json(const JointDist& j);

} // namespace ctrump
