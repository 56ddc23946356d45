#include "ctrump/io.hpp"

#include "ctrump/error.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace ctrump {

Rational parse_entry(const Json& value, const std::string& where, const ParseOptions& options)
{
    try {
        if (value.is_string())
            return parse_rational(value.get<std::string>());
        if (value.is_number_unsigned())
            return Rational(Integer(std::to_string(value.get<std::uint64_t>())));
        if (value.is_number_integer())
            return Rational(Integer(std::to_string(value.get<std::int64_t>())));
        if (value.is_number_float()) {
            if (!options.allow_floats)
                throw DomainError("floating-point number found; write it as a string or pass --allow-floats");
            char buf[64];
            auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value.get<double>());
            return parse_rational(std::string_view(buf, static_cast<std::size_t>(ptr - buf)));
        }
    } catch (const DomainError& e) {
        throw DomainError(where + ": " + e.what());
    }
    throw DomainError(where + ": expected a number or a numeric string");
}

Dist parse_dist(const Json& doc, const ParseOptions& options)
{
    const Json* arr = &doc;
    std::string name = "p";
    if (doc.is_object()) {
        if (doc.contains("tensor"))
            return flatten(parse_joint(doc, options));
        arr = nullptr;
        for (auto it = doc.begin(); it != doc.end(); ++it)
            if (it.value().is_array()) {
                if (arr)
                    throw DomainError("distribution object must hold exactly one array");
                arr = &it.value();
                name = it.key();
            }
        if (!arr)
            throw DomainError("distribution object holds no array");
    }
    if (!arr->is_array() || arr->empty())
        throw DomainError("expected a non-empty array of entries");
    std::vector<Rational> e;
    for (std::size_t i = 0; i < arr->size(); ++i)
        e.push_back(parse_entry((*arr)[i], name + "[" + std::to_string(i) + "]", options));
    try {
        return Dist(std::move(e));
    } catch (const DomainError& err) {
        throw DomainError(name + ": " + err.what());
    }
}

namespace {

void collect(const Json& node, std::size_t depth, std::vector<std::size_t>& shape, std::vector<Rational>& out,
             const std::string& where, const ParseOptions& options)
{
    if (!node.is_array()) {
        if (depth != shape.size())
            throw DomainError(where + ": ragged tensor");
        out.push_back(parse_entry(node, where, options));
        return;
    }
    if (node.empty())
        throw DomainError(where + ": empty array");
    if (depth == shape.size())
        shape.push_back(node.size());
    else if (depth > shape.size() || shape[depth] != node.size())
        throw DomainError(where + ": ragged tensor");
    for (std::size_t i = 0; i < node.size(); ++i)
        collect(node[i], depth + 1, shape, out, where + "[" + std::to_string(i) + "]", options);
}

} // namespace

JointDist parse_joint(const Json& doc, const ParseOptions& options)
{
    if (!doc.is_object() || !doc.contains("tensor"))
        throw DomainError("joint distribution needs a \"tensor\" field");
    std::vector<std::size_t> shape;
    std::vector<Rational> entries;
    // Fix the shape along the first branch before descending.
    const Json* node = &doc["tensor"];
    while (node->is_array() && !node->empty()) {
        shape.push_back(node->size());
        node = &(*node)[0];
    }
    std::vector<std::size_t> seen;
    collect(doc["tensor"], 0, seen, entries, "tensor", options);
    if (seen != shape)
        throw DomainError("tensor: ragged tensor");
    std::vector<std::string> labels;
    if (doc.contains("labels")) {
        for (const auto& l : doc["labels"]) {
            if (!l.is_string())
                throw DomainError("labels must be strings");
            labels.push_back(l.get<std::string>());
        }
    } else {
        for (std::size_t i = 0; i < shape.size(); ++i)
            labels.push_back(std::string(1, static_cast<char>('A' + i)));
    }
    return JointDist(std::move(entries), std::move(shape), std::move(labels));
}

Dist load_dist(const std::string& path, const ParseOptions& options)
{
    std::ifstream in(path);
    if (!in)
        throw DomainError(path + ": cannot open file");
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw DomainError(path + ": " + e.what());
    }
    try {
        return parse_dist(doc, options);
    } catch (const DomainError& e) {
        throw DomainError(path + ": " + e.what());
    }
}

Json to_json(const Rational& r)
{
    return to_string(r);
}

Json to_json(const Dist& p)
{
    Json a = Json::array();
    for (const auto& x : p)
        a.push_back(to_string(x));
    return a;
}

Json to_json(const JointDist& j)
{
    Json doc;
    doc["shape"] = j.shape();
    doc["labels"] = j.labels();
    Json t = Json::array();
    for (const auto& x : j.tensor())
        t.push_back(to_string(x));
    doc["tensor_flat"] = std::move(t);
    return doc;
}

} // namespace ctrump
