#include "cqsoliton/cli/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "cqsoliton/errors.hpp"
#include "json.hpp"

namespace cqsoliton::cli {
namespace {

using nlohmann::json;

std::string trim(std::string_view s) {
    std::string out;
    for (char c : s) {
        if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(static_cast<char>(std::tolower(c)));
    }
    return out;
}

double parse_real(std::string_view s, std::string_view what) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
        throw DomainError("cannot parse " + std::string(what) + " '" + std::string(s) + "'");
    }
    return v;
}

const json& require(const json& obj, const char* key, const std::string& path) {
    if (!obj.is_object() || !obj.contains(key)) throw DomainError("config is missing required field '" + path + "'");
    return obj.at(key);
}

double number(const json& obj, const char* key, const std::string& path) {
    const auto& v = require(obj, key, path);
    if (!v.is_number()) throw DomainError("config field '" + path + "' must be a number");
    return v.get<double>();
}

double number_or(const json& obj, const char* key, const std::string& path, double fallback) {
    return obj.contains(key) ? number(obj, key, path) : fallback;
}

std::size_t count(const json& obj, const char* key, const std::string& path) {
    const auto& v = require(obj, key, path);
    if (!v.is_number_integer() || v.get<long long>() <= 0) {
        throw DomainError("config field '" + path + "' must be a positive integer");
    }
    return v.get<std::size_t>();
}

}  // namespace

double parse_epsilon(std::string_view text) {
    const std::string s = trim(text);
    if (s.empty()) throw DomainError("empty value for eps");
    if (s == "sqrt3") return kSqrt3;
    const std::string_view sv = s;
    constexpr std::string_view suffix = "*sqrt3";
    constexpr std::string_view prefix = "sqrt3*";
    if (sv.size() > suffix.size() && sv.substr(sv.size() - suffix.size()) == suffix) {
        return parse_real(sv.substr(0, sv.size() - suffix.size()), "eps") * kSqrt3;
    }
    if (sv.size() > prefix.size() && sv.substr(0, prefix.size()) == prefix) {
        return parse_real(sv.substr(prefix.size()), "eps") * kSqrt3;
    }
    return parse_real(sv, "eps");
}

RunConfig parse_run_config(std::string_view json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw DomainError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) throw DomainError("config must be a JSON object");

    RunConfig cfg;
    const auto& eps = require(root, "epsilon", "epsilon");
    if (eps.is_number()) {
        cfg.epsilon = eps.get<double>();
    } else if (eps.is_string()) {
        cfg.epsilon = parse_epsilon(eps.get<std::string>());
    } else {
        throw DomainError("config field 'epsilon' must be a number or a string like \"0.5*sqrt3\"");
    }

    const auto& grid = require(root, "grid", "grid");
    cfg.grid.x_min = number(grid, "x_min", "grid.x_min");
    cfg.grid.x_max = number(grid, "x_max", "grid.x_max");
    cfg.grid.J = count(grid, "J", "grid.J");

    const auto& flow = require(root, "flow", "flow");
    const bool has_mass = flow.contains("mass_a");
    const bool has_from = flow.contains("mass_from");
    if (has_mass == has_from) {
        throw DomainError("config is missing required field 'flow.mass_a' (or give 'flow.mass_from', not both)");
    }
    if (has_mass) {
        cfg.flow.mass_a = number(flow, "mass_a", "flow.mass_a");
    } else {
        const auto& from = flow.at("mass_from");
        MassFrom mf;
        mf.k = number(from, "k", "flow.mass_from.k");
        const auto& b = require(from, "branch", "flow.mass_from.branch");
        if (!b.is_string()) throw DomainError("config field 'flow.mass_from.branch' must be a string");
        mf.branch = parse_branch(b.get<std::string>());
        cfg.flow.mass_from = mf;
    }
    cfg.flow.dt = number_or(flow, "dt", "flow.dt", cfg.flow.dt);
    if (flow.contains("max_steps")) cfg.flow.max_steps = count(flow, "max_steps", "flow.max_steps");
    cfg.flow.conv_tol = number_or(flow, "conv_tol", "flow.conv_tol", cfg.flow.conv_tol);
    cfg.flow.init_width = number_or(flow, "init_width", "flow.init_width", cfg.flow.init_width);
    if (flow.contains("jump")) {
        const auto& j = flow.at("jump");
        const std::string name = j.is_string() ? j.get<std::string>() : "";
        if (name == "lumped") {
            cfg.flow.jump = JumpTreatment::Lumped;
        } else if (name == "one_sided") {
            cfg.flow.jump = JumpTreatment::OneSided;
        } else {
            throw DomainError("config field 'flow.jump' must be \"lumped\" or \"one_sided\"");
        }
    }

    if (root.contains("output")) {
        const auto& out = root.at("output");
        if (out.contains("format")) cfg.output.format = parse_format(out.at("format").get<std::string>());
        if (out.contains("path")) cfg.output.path = out.at("path").get<std::string>();
    }
    return cfg;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_run_config(ss.str());
}

}  // namespace cqsoliton::cli
