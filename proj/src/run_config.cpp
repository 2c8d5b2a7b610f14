// Copyright 2026 The qdisorder Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qdisorder/run_config.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "qdisorder/cache.hpp"
#include "qdisorder/errors.hpp"
#include "qdisorder/exact_diag.hpp"

namespace qdisorder {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

double to_double(const std::string &s, const char *what) {
    if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
        throw ConfigError(std::string("bad number '") + s + "' in " + what);
    }
    return v;
}

std::size_t to_size(const std::string &s, const char *what) {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw ConfigError(std::string("bad integer '") + s + "' in " + what);
    }
    return v;
}

const char *pair_selection_name(PairSelection p) {
    switch (p) {
        case PairSelection::AllBonds: return "all-bonds";
        case PairSelection::Central: return "central";
        case PairSelection::Explicit: return "explicit";
    }
    return "?";
}

nlohmann::json series_json(const std::vector<std::pair<double, double>> &s) {
    auto out = nlohmann::json::array();
    for (const auto &[n, v] : s) {
        out.push_back({std::isinf(n) ? nlohmann::json("inf") : nlohmann::json(n), v});
    }
    return out;
}

}  // namespace

ModelFamily parse_model(const std::string &name) {
    if (name == "xy-spin-glass") return ModelFamily::XYSpinGlass;
    if (name == "xy-random-field") return ModelFamily::XYRandomField;
    if (name == "xyz-spin-glass") return ModelFamily::XYZSpinGlass;
    if (name == "xy-ordered") return ModelFamily::XYOrdered;
    throw ConfigError("unknown model '" + name + "'");
}

std::string model_name(ModelFamily f) {
    switch (f) {
        case ModelFamily::XYSpinGlass: return "xy-spin-glass";
        case ModelFamily::XYRandomField: return "xy-random-field";
        case ModelFamily::XYZSpinGlass: return "xyz-spin-glass";
        case ModelFamily::XYOrdered: return "xy-ordered";
    }
    return "?";
}

std::vector<double> parse_grid(const std::string &text) {
    const std::string t = trim(text);
    if (t.empty()) throw ConfigError("empty mean grid");
    if (t.find(':') != std::string::npos) {
        const auto parts = split(t, ':');
        if (parts.size() != 3) throw ConfigError("grid range must be start:stop:count");
        const double a = to_double(parts[0], "mean grid");
        const double b = to_double(parts[1], "mean grid");
        const std::size_t n = to_size(parts[2], "mean grid");
        if (n == 0) throw ConfigError("grid count must be positive");
        if (n == 1) return {a};
        std::vector<double> out(n);
        for (std::size_t i = 0; i < n; ++i) {
            // endpoints exact, interior points evenly spaced
            out[i] = i + 1 == n ? b : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
        }
        return out;
    }
    std::vector<double> out;
    for (const auto &p : split(t, ',')) out.push_back(to_double(p, "mean grid"));
    return out;
}

void parse_pairs(const std::string &text, RunConfig &cfg) {
    const std::string t = trim(text);
    cfg.explicit_pairs.clear();
    if (t == "all-bonds" || t == "all") {
        cfg.pair_selection = PairSelection::AllBonds;
        return;
    }
    if (t == "central") {
        cfg.pair_selection = PairSelection::Central;
        return;
    }
    cfg.pair_selection = PairSelection::Explicit;
    for (const auto &item : split(t, ',')) {
        const auto ends = split(item, '-');
        if (ends.size() != 2) throw ConfigError("pair '" + item + "' is not of the form i-j");
        const std::size_t i = to_size(ends[0], "pairs");
        const std::size_t j = to_size(ends[1], "pairs");
        if (i == 0 || j == 0 || i == j) throw ConfigError("pair '" + item + "' needs distinct 1-based sites");
        cfg.explicit_pairs.push_back({i - 1, j - 1});
    }
}

std::vector<std::size_t> parse_sizes(const std::string &text) {
    std::vector<std::size_t> out;
    for (const auto &p : split(trim(text), ',')) out.push_back(to_size(p, "sizes"));
    return out;
}

std::vector<std::pair<double, double>> parse_series(const std::string &text) {
    std::vector<std::pair<double, double>> out;
    for (const auto &item : split(trim(text), ',')) {
        const auto kv = split(item, '=');
        if (kv.size() != 2) throw ConfigError("series entry '" + item + "' is not size=value");
        out.emplace_back(to_double(kv[0], "series"), to_double(kv[1], "series"));
    }
    return out;
}

void RunConfig::validate() const {
    if (mean_grid.empty()) throw ConfigError("mean grid is empty");
    for (double x : mean_grid) {
        if (!std::isfinite(x)) throw ConfigError("mean grid has a non-finite point");
    }
    if (!std::isfinite(gamma) || !std::isfinite(delta) || !std::isfinite(field) || !std::isfinite(coupling)) {
        throw ConfigError("chain parameters must be finite");
    }
    if (!std::isfinite(sigma) || sigma < 0.0) throw ConfigError("sigma must be finite and >= 0");
    if (realizations == 0) throw ConfigError("need at least one realization");
    switch (model) {
        case ModelFamily::XYOrdered:
            if (sigma != 0.0) throw ConfigError("the ordered chain takes sigma = 0");
            [[fallthrough]];
        case ModelFamily::XYSpinGlass:
            // x = Jbar/h
            if (field == 0.0) throw ConfigError("the sweep is in units of the field; field must be nonzero");
            if (delta != 0.0) throw ConfigError("XY models have no anisotropy delta");
            break;
        case ModelFamily::XYRandomField:
            if (coupling == 0.0) throw ConfigError("the sweep is in units of the coupling; it must be nonzero");
            if (delta != 0.0) throw ConfigError("XY models have no anisotropy delta");
            break;
        case ModelFamily::XYZSpinGlass:
            if (field == 0.0) throw ConfigError("the sweep is in units of the field; field must be nonzero");
            break;
    }
    auto check_size = [&](std::size_t n) {
        if (model == ModelFamily::XYZSpinGlass) {
            if (n < 4 || n > kMaxExactSites) {
                throw ConfigError("XYZ chains need 4.." + std::to_string(kMaxExactSites) + " sites");
            }
        } else if (n < 4) {
            throw ConfigError("XY chains need at least 4 sites");
        }
        for (const SitePair &p : explicit_pairs) {
            if (p.first >= n || p.second >= n) throw ConfigError("pair " + pair_label(p) + " is outside the chain");
            if (model != ModelFamily::XYZSpinGlass && p.second != (p.first + 1) % n) {
                throw ConfigError("XY chains only provide nearest-neighbour pairs i-(i+1)");
            }
        }
    };
    check_size(n_sites);
    for (std::size_t n : sizes) check_size(n);
    if (!sizes.empty()) check_size(reference_size);
}

std::vector<SitePair> resolve_pairs(const RunConfig &cfg, std::size_t n_sites) {
    switch (cfg.pair_selection) {
        case PairSelection::AllBonds:
            if (cfg.model == ModelFamily::XYZSpinGlass) {
                std::vector<SitePair> out;
                for (std::size_t i = 0; i + 1 < n_sites; ++i) out.push_back({i, i + 1});
                return out;
            }
            return all_bonds(n_sites);
        case PairSelection::Central: return central_pairs(n_sites);
        case PairSelection::Explicit: return cfg.explicit_pairs;
    }
    return {};
}

ChainModel model_at(const RunConfig &cfg, double x, std::size_t n_sites) {
    ChainModel m;
    m.family = cfg.model;
    m.n_sites = n_sites;
    m.gamma = cfg.gamma;
    m.delta = cfg.delta;
    m.coupling = cfg.coupling;
    m.field = cfg.field;
    switch (cfg.model) {
        case ModelFamily::XYOrdered:
            m.coupling = x * cfg.field;
            m.disorder = {DisorderTarget::Couplings, m.coupling, 0.0};
            break;
        case ModelFamily::XYSpinGlass:
        case ModelFamily::XYZSpinGlass:
            m.disorder = {DisorderTarget::Couplings, x * cfg.field, cfg.sigma};
            break;
        case ModelFamily::XYRandomField:
            m.disorder = {DisorderTarget::Fields, x * cfg.coupling, cfg.sigma};
            break;
    }
    return m;
}

nlohmann::json to_json(const RunConfig &cfg) {
    nlohmann::json pairs = pair_selection_name(cfg.pair_selection);
    if (cfg.pair_selection == PairSelection::Explicit) {
        pairs = nlohmann::json::array();
        for (const auto &p : cfg.explicit_pairs) pairs.push_back(pair_label(p));
    }
    return {
        {"model", model_name(cfg.model)},
        {"n_sites", cfg.n_sites},
        {"gamma", cfg.gamma},
        {"delta", cfg.delta},
        {"field", cfg.field},
        {"coupling", cfg.coupling},
        {"sigma", cfg.sigma},
        {"mean_grid", cfg.mean_grid},
        {"realizations", cfg.realizations},
        {"seed", cfg.seed},
        {"pairs", pairs},
        {"sizes", cfg.sizes},
        {"reference_size", cfg.reference_size},
        {"synthetic_delta", series_json(cfg.synthetic_delta)},
        {"synthetic_cadv", series_json(cfg.synthetic_cadv)},
    };
}

namespace {

std::vector<std::pair<double, double>> series_from_json(const nlohmann::json &j) {
    std::vector<std::pair<double, double>> out;
    for (const auto &e : j) {
        const double n = e.at(0).is_string() ? std::numeric_limits<double>::infinity() : e.at(0).get<double>();
        out.emplace_back(n, e.at(1).get<double>());
    }
    return out;
}

}  // namespace

RunConfig from_json(const nlohmann::json &j) {
    RunConfig cfg;
    try {
        cfg.model = parse_model(j.at("model").get<std::string>());
        cfg.n_sites = j.at("n_sites").get<std::size_t>();
        cfg.gamma = j.at("gamma").get<double>();
        cfg.delta = j.at("delta").get<double>();
        cfg.field = j.at("field").get<double>();
        cfg.coupling = j.at("coupling").get<double>();
        cfg.sigma = j.at("sigma").get<double>();
        cfg.mean_grid = j.at("mean_grid").get<std::vector<double>>();
        cfg.realizations = j.at("realizations").get<std::size_t>();
        cfg.seed = j.at("seed").get<std::uint64_t>();
        const auto &pairs = j.at("pairs");
        if (pairs.is_string()) {
            parse_pairs(pairs.get<std::string>(), cfg);
        } else {
            std::string list;
            for (const auto &p : pairs) list += (list.empty() ? "" : ",") + p.get<std::string>();
            parse_pairs(list, cfg);
        }
        cfg.sizes = j.at("sizes").get<std::vector<std::size_t>>();
        cfg.reference_size = j.at("reference_size").get<std::size_t>();
        cfg.synthetic_delta = series_from_json(j.at("synthetic_delta"));
        cfg.synthetic_cadv = series_from_json(j.at("synthetic_cadv"));
    } catch (const nlohmann::json::exception &e) {
        throw ConfigError(std::string("malformed configuration: ") + e.what());
    }
    return cfg;
}

std::uint64_t config_hash(const RunConfig &cfg) {
    nlohmann::json j = to_json(cfg);
    j.erase("realizations");
    j.erase("synthetic_delta");
    j.erase("synthetic_cadv");
    j["format"] = 1;
    return fnv1a64(j.dump());
}

}  // namespace qdisorder
