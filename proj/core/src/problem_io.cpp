#include "wzbc/problem_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace wzbc {

using nlohmann::json;

namespace {

std::vector<double> read_array(const json& doc, const char* key)
{
    if (!doc.contains(key))
        throw ProblemError(std::string("missing field \"") + key + "\"");
    const json& arr = doc.at(key);
    if (!arr.is_array())
        throw ProblemError(std::string("field \"") + key + "\" must be an array of numbers");
    std::vector<double> out;
    out.reserve(arr.size());
    for (const auto& v : arr) {
        if (!v.is_number())
            throw ProblemError(std::string("field \"") + key + "\" must be an array of numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

Rational read_kappa(const json& doc)
{
    if (!doc.contains("kappa"))
        return Rational(1);
    const json& k = doc.at("kappa");
    try {
        if (k.is_number_integer())
            return Rational(k.get<std::int64_t>());
        if (k.is_string())
            return Rational::parse(k.get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw ProblemError(std::string("invalid kappa: ") + e.what());
    }
    throw ProblemError("kappa must be an integer or a \"num/den\" string");
}

} // namespace

Problem parse_problem(std::string_view json_text)
{
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ProblemError(std::string("malformed problem JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("kind") || !doc.at("kind").is_string())
        throw ProblemError("problem JSON needs a string field \"kind\"");
    const std::string kind = doc.at("kind").get<std::string>();
    if (kind == "gaussian") {
        if (!doc.contains("P") || !doc.at("P").is_number())
            throw ProblemError("missing numeric field \"P\"");
        GaussianProblem g;
        g.power = doc.at("P").get<double>();
        g.noise_vars = read_array(doc, "W");
        g.sideinfo_vars = read_array(doc, "N");
        g.kappa = read_kappa(doc);
        return validate_problem(std::move(g));
    }
    if (kind == "binary") {
        BinaryProblem b;
        b.crossovers = read_array(doc, "p");
        b.sideinfo_crossovers = read_array(doc, "beta");
        b.kappa = read_kappa(doc);
        return validate_problem(std::move(b));
    }
    throw ProblemError("unknown problem kind \"" + kind + "\" (expected gaussian or binary)");
}

Problem load_problem(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ProblemError("cannot open problem file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_problem(ss.str());
}

std::string to_json(const Problem& problem)
{
    json doc;
    if (const auto* g = std::get_if<GaussianProblem>(&problem)) {
        doc["kind"] = "gaussian";
        doc["P"] = g->power;
        doc["W"] = g->noise_vars;
        doc["N"] = g->sideinfo_vars;
        doc["kappa"] = g->kappa.to_string();
    } else {
        const auto& b = std::get<BinaryProblem>(problem);
        doc["kind"] = "binary";
        doc["p"] = b.crossovers;
        doc["beta"] = b.sideinfo_crossovers;
        doc["kappa"] = b.kappa.to_string();
    }
    return doc.dump();
}

} // namespace wzbc
