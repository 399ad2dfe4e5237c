#pragma once

// Check records and reports shared by all commands.

#include <string>
#include <utility>
#include <vector>

#include "fooling.hpp"
#include "rng.hpp"
#include "serialize.hpp"

namespace glnlab {

struct CheckRecord {
    std::string name;
    Mode mode = Mode::exact;
    Json values = Json::object();
    Json bounds = Json::object();
    bool pass = true;
    bool vacuous = false;  // informational; never affects the verdict
};

struct Report {
    std::string command;
    Json config = Json::object();
    std::vector<CheckRecord> checks;
    Json details = Json::object();

    CheckRecord& add(std::string name, Mode mode, bool pass) {
        CheckRecord r;
        r.name = std::move(name);
        r.mode = mode;
        r.pass = pass;
        checks.push_back(std::move(r));
        return checks.back();
    }

    CheckRecord& note(std::string name, Mode mode) {
        CheckRecord& r = add(std::move(name), mode, true);
        r.vacuous = true;
        return r;
    }

    bool verdict() const {
        for (const auto& c : checks) {
            if (!c.vacuous && !c.pass) return false;
        }
        return true;
    }

    Json to_json() const {
        Json rows = Json::array();
        for (const auto& c : checks) {
            rows.push_back({{"name", c.name}, {"mode", mode_name(c.mode)}, {"values", c.values},
                            {"bounds", c.bounds}, {"pass", c.pass}, {"vacuous", c.vacuous}});
        }
        return {{"command", command},
                {"config", config},
                {"generator", {{"algorithm", std::string(Rng::kAlgorithm)}, {"version", std::string(Rng::kVersion)}}},
                {"checks", rows},
                {"details", details},
                {"verdict", verdict() ? "pass" : "fail"}};
    }

    // One row per check; values and bounds as compact JSON.
    std::string to_csv() const {
        const auto quote = [](const std::string& s) {
            std::string out = "\"";
            for (char c : s) {
                if (c == '"') out += '"';
                out += c;
            }
            return out + "\"";
        };
        std::string out = "name,mode,pass,vacuous,values,bounds\n";
        for (const auto& c : checks) {
            out += quote(c.name) + "," + mode_name(c.mode) + "," + (c.pass ? "true" : "false") + "," +
                   (c.vacuous ? "true" : "false") + "," + quote(c.values.dump()) + "," + quote(c.bounds.dump()) +
                   "\n";
        }
        return out;
    }
};

}  // namespace glnlab
