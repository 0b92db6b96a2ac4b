#include "eulerhom/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace eulerhom {

using nlohmann::json;

SolveOptions RunConfig::solve_options() const {
    SolveOptions o;
    o.root_tol = root_tol;
    o.span.accept_error = quadrature_tol;
    o.ode.rtol = ode_tol;
    return o;
}

RunConfig config_from_json(const std::string& text, RunConfig c) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
    auto positive = [](const json& v, const std::string& key) {
        if (!v.is_number() || !(v.get<double>() > 0.0)) throw std::invalid_argument(key + " must be a positive number");
        return v.get<double>();
    };
    for (const auto& [key, v] : j.items()) {
        if (key == "quadrature_tol") c.quadrature_tol = positive(v, key);
        else if (key == "root_tol") c.root_tol = positive(v, key);
        else if (key == "ode_tol") c.ode_tol = positive(v, key);
        else if (key == "points_per_arc") {
            if (!v.is_number_integer() || v.get<long long>() < 16 || v.get<long long>() > 1 << 20)
                throw std::invalid_argument("points_per_arc must be an integer in [16, 2^20]");
            c.points_per_arc = v.get<int>();
        } else if (key == "format") {
            const std::string f = v.is_string() ? v.get<std::string>() : "";
            if (f == "JSON" || f == "json") c.format = OutputFormat::JSON;
            else if (f == "CSV" || f == "csv") c.format = OutputFormat::CSV;
            else throw std::invalid_argument("format must be JSON or CSV");
        } else if (key == "output") {
            if (!v.is_string()) throw std::invalid_argument("output must be a path string");
            c.output = v.get<std::string>();
        } else if (key == "seed") {
            if (!v.is_number_integer()) throw std::invalid_argument("seed must be an integer");
            c.seed = v.get<std::uint64_t>();
        } else {
            throw std::invalid_argument("unknown config key " + key);
        }
    }
    return c;
}

RunConfig load_config(const std::string& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read config file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return config_from_json(ss.str(), base);
}

std::string config_to_json(const RunConfig& c) {
    const json j = {{"quadrature_tol", c.quadrature_tol},
                    {"root_tol", c.root_tol},
                    {"ode_tol", c.ode_tol},
                    {"points_per_arc", c.points_per_arc},
                    {"format", c.format == OutputFormat::JSON ? "JSON" : "CSV"},
                    {"output", c.output},
                    {"seed", c.seed}};
    return j.dump(2);
}

}  // namespace eulerhom
