#include "cevi/io/config.hpp"

#include "cevi/format.hpp"
#include "cevi/io/csv.hpp"

#include <map>
#include <optional>
#include <set>

namespace cevi::io {

namespace {

std::string join_reals(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + format_real(v[i]);
    return out;
}

}  // namespace

Distribution<double> parse_distribution(std::string_view literal) {
    const auto text = trim(literal);
    const auto open = text.find('(');
    if (open == std::string_view::npos || text.back() != ')')
        throw InputError("bad distribution literal '" + std::string(text) + "'");
    const auto name = trim(text.substr(0, open));
    std::vector<double> args;
    for (auto a : split(text.substr(open + 1, text.size() - open - 2), ',')) args.push_back(parse_real(a, true));
    auto expect = [&](std::size_t count) {
        if (args.size() != count)
            throw InputError(std::string(name) + " takes " + std::to_string(count) + " arguments, got " +
                             std::to_string(args.size()));
    };
    if (name == "revburr") {
        expect(4);
        return Distribution<double>::reverse_burr(args[0], args[1], args[2], args[3]);
    }
    if (name == "gpd") {
        expect(2);
        return Distribution<double>::gpd(args[0], args[1]);
    }
    if (name == "beta") {
        expect(2);
        return Distribution<double>::beta(args[0], args[1]);
    }
    throw InputError("unknown distribution '" + std::string(name) + "' (expected revburr, gpd or beta)");
}

std::vector<Index> k_range(Index k_min, Index k_max, Index k_step) {
    if (k_step < 1) throw InputError("k_step must be at least 1");
    if (k_min < 1) throw InputError("k_min must be at least 1");
    std::vector<Index> out;
    for (Index k = k_min; k <= k_max; k += k_step) out.push_back(k);
    return out;
}

std::vector<double> parse_real_list(std::string_view text) {
    std::vector<double> out;
    if (trim(text).empty()) return out;
    for (auto item : split(text, ',')) out.push_back(parse_real(item, true));
    return out;
}

std::vector<Family> parse_family_list(std::string_view text) {
    std::vector<Family> out;
    if (trim(text).empty()) return out;
    for (auto item : split(text, ',')) {
        const auto f = parse_family(item);
        if (!f) throw InputError("unknown family '" + std::string(item) + "' (expected mom, type1, type2)");
        out.push_back(*f);
    }
    return out;
}

std::vector<Method> parse_method_list(std::string_view text) {
    std::vector<Method> out;
    if (trim(text).empty()) return out;
    for (auto item : split(text, ',')) {
        const auto m = parse_method(item);
        if (!m) throw InputError("unknown method '" + std::string(item) + "' (expected km, l, efg)");
        out.push_back(*m);
    }
    return out;
}

RunConfig parse_config(std::string_view text) {
    static const std::set<std::string, std::less<>> known{"dist_x", "dist_c", "n",      "reps",     "k_grid",
                                                          "k_min",  "k_max",  "k_step", "alpha",    "families",
                                                          "methods", "seed",  "out"};
    std::map<std::string, std::pair<std::string, std::size_t>, std::less<>> values;
    std::size_t line_no = 0;
    for (auto raw : split(text, '\n')) {
        ++line_no;
        auto line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw InputError("config line " + std::to_string(line_no) + ": expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        if (!known.contains(key))
            throw InputError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
        if (values.contains(key))
            throw InputError("config line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
        values.emplace(key, std::make_pair(std::string(trim(line.substr(eq + 1))), line_no));
    }

    RunConfig cfg;
    auto with_key = [&](const std::string& key, auto&& apply) {
        const auto it = values.find(key);
        if (it == values.end()) return false;
        try {
            apply(it->second.first);
        } catch (const std::exception& e) {
            throw InputError("config key '" + key + "' (line " + std::to_string(it->second.second) + "): " + e.what());
        }
        return true;
    };
    auto require = [&](const std::string& key, auto&& apply) {
        if (!with_key(key, apply)) throw InputError("config: missing required key '" + key + "'");
    };

    require("dist_x", [&](const std::string& v) { cfg.dist_x = parse_distribution(v); });
    require("dist_c", [&](const std::string& v) { cfg.dist_c = parse_distribution(v); });
    with_key("n", [&](const std::string& v) { cfg.n = parse_integer(v); });
    with_key("reps", [&](const std::string& v) { cfg.reps = parse_integer(v); });
    with_key("seed", [&](const std::string& v) { cfg.seed = static_cast<std::uint64_t>(parse_integer(v)); });
    with_key("alpha", [&](const std::string& v) { cfg.alphas = parse_real_list(v); });
    with_key("families", [&](const std::string& v) { cfg.families = parse_family_list(v); });
    with_key("methods", [&](const std::string& v) { cfg.methods = parse_method_list(v); });
    with_key("out", [&](const std::string& v) { cfg.out = v; });

    const bool has_grid = values.contains("k_grid");
    const bool has_range = values.contains("k_min") || values.contains("k_max") || values.contains("k_step");
    if (has_grid && has_range) throw InputError("config: give either 'k_grid' or 'k_min/k_max/k_step', not both");
    if (has_grid) {
        with_key("k_grid", [&](const std::string& v) {
            cfg.k_grid.clear();
            if (!trim(v).empty())
                for (auto item : split(v, ',')) cfg.k_grid.push_back(parse_integer(item));
        });
    } else if (has_range) {
        Index k_min = 1, k_max = 0, k_step = 1;
        require("k_min", [&](const std::string& v) { k_min = parse_integer(v); });
        require("k_max", [&](const std::string& v) { k_max = parse_integer(v); });
        with_key("k_step", [&](const std::string& v) { k_step = parse_integer(v); });
        cfg.k_grid = k_range(k_min, k_max, k_step);
    } else {
        throw InputError("config: missing required key 'k_grid' (or 'k_min'/'k_max')");
    }
    return cfg;
}

std::string to_config_text(const RunConfig& cfg) {
    std::string out;
    out += "dist_x = " + cfg.dist_x.literal() + "\n";
    out += "dist_c = " + cfg.dist_c.literal() + "\n";
    out += "n = " + std::to_string(cfg.n) + "\n";
    out += "reps = " + std::to_string(cfg.reps) + "\n";
    out += "k_grid = ";
    for (std::size_t i = 0; i < cfg.k_grid.size(); ++i) out += (i ? "," : "") + std::to_string(cfg.k_grid[i]);
    out += "\nalpha = " + join_reals(cfg.alphas) + "\n";
    out += "families = ";
    for (std::size_t i = 0; i < cfg.families.size(); ++i) out += std::string(i ? "," : "") + std::string(to_string(cfg.families[i]));
    out += "\nmethods = ";
    for (std::size_t i = 0; i < cfg.methods.size(); ++i) out += std::string(i ? "," : "") + std::string(to_string(cfg.methods[i]));
    out += "\nseed = " + std::to_string(cfg.seed) + "\n";
    if (!cfg.out.empty()) out += "out = " + cfg.out + "\n";
    return out;
}

StudyDesign to_design(const RunConfig& cfg) {
    if (cfg.alphas.empty()) throw InputError("config: 'alpha' list is empty");
    for (double a : cfg.alphas)
        if (!(a >= 1)) throw InputError("config: alpha values must be >= 1");
    if (cfg.families.empty()) throw InputError("config: 'families' list is empty");
    if (cfg.methods.empty()) throw InputError("config: 'methods' list is empty");
    if (cfg.k_grid.empty()) throw InputError("config: k grid is empty");
    StudyDesign d{.dist_x = cfg.dist_x,
                  .dist_c = cfg.dist_c,
                  .n = cfg.n,
                  .reps = cfg.reps,
                  .k_grid = cfg.k_grid,
                  .alphas = cfg.alphas,
                  .specs = expand_specs(cfg.families, cfg.methods, cfg.alphas),
                  .seed = cfg.seed};
    d.validate();
    return d;
}

}  // namespace cevi::io
