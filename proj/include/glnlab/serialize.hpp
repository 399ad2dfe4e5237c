#pragma once

// JSON forms of the domain types. Exact quantities are "num/den" strings;
// sampled quantities carry their standard error and sample count.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "circuits.hpp"
#include "dist.hpp"
#include "errors.hpp"
#include "fooling.hpp"
#include "model.hpp"
#include "polylab.hpp"
#include "rational.hpp"
#include "sensitivity.hpp"
#include "terms.hpp"

namespace glnlab {

using Json = nlohmann::json;

inline Json exact_json(const ExactProb& q) { return rational_string(q); }

template <class T>
Json scalar_json(const T& v) {
    if constexpr (kExactScalar<T>) {
        return rational_string(v);
    } else {
        return static_cast<double>(v);
    }
}

inline Json estimate_json(const ProportionEstimate& e) {
    return {{"estimate", e.value()},
            {"hits", e.hits},
            {"samples", e.samples},
            {"stderr", e.std_error()},
            {"half_width", e.half_width()}};
}

inline Json params_json(const Params& p) { return {{"m", p.m}, {"M", p.M}, {"N", p.N}, {"n", p.n}}; }

inline Json word_json(const Word& x) { return x.coords; }

inline Word word_from_json(const Json& j) {
    if (!j.is_array()) throw EncodingError("word must be a JSON array of integers");
    Word x;
    for (const auto& v : j) {
        if (!v.is_number_integer() || v.get<long long>() < 0) throw EncodingError("word entries must be non-negative integers");
        x.coords.push_back(v.get<Value>());
    }
    return x;
}

// "0,1,2,3,0,1" or "0 1 2 3 0 1"
inline Word parse_word_text(const std::string& text) {
    Word x;
    std::string token;
    for (char c : text) {
        if (c == ',' || c == ' ') {
            if (!token.empty()) x.coords.push_back(static_cast<Value>(std::stoul(token)));
            token.clear();
        } else if (c >= '0' && c <= '9') {
            token += c;
        } else {
            throw EncodingError(std::string("unexpected character '") + c + "' in word");
        }
    }
    if (!token.empty()) x.coords.push_back(static_cast<Value>(std::stoul(token)));
    return x;
}

inline Json bits_json(const BitString& b) { return to_bit_text(b); }

// --- terms and DNFs ---------------------------------------------------------------

inline Json term_json(const ProperTerm& c) {
    Json out = Json::array();
    for (const auto& [i, y] : c.pairs) out.push_back({i, y});
    return out;
}

inline Json term_json(const BitTerm& c) {
    Json out = Json::array();
    for (const auto& [pos, bit] : c.literals) out.push_back({pos, bit});
    return out;
}

inline Json dnf_json(const Dnf& f) {
    Json terms = Json::array();
    for (const auto& t : f.bit_terms) terms.push_back(term_json(t));
    for (const auto& t : f.proper_terms) terms.push_back(term_json(t));
    return {{"kind", f.kind == Dnf::Kind::bit ? "bit" : "proper"}, {"terms", terms}};
}

inline Dnf dnf_from_json(const Json& j, const Params& p) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind != "bit" && kind != "proper") throw EncodingError("query kind must be \"bit\" or \"proper\"");
    std::vector<BitTerm> bits;
    std::vector<ProperTerm> proper;
    for (const auto& term : j.at("terms")) {
        std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
        for (const auto& pair : term) {
            if (!pair.is_array() || pair.size() != 2) throw EncodingError("term entries must be [index, value] pairs");
            pairs.emplace_back(pair[0].get<std::uint64_t>(), pair[1].get<std::uint64_t>());
        }
        if (kind == "bit") {
            std::vector<std::pair<std::uint64_t, std::uint8_t>> lits;
            for (const auto& [pos, bit] : pairs) {
                if (bit > 1) throw EncodingError("literal value must be 0 or 1");
                lits.emplace_back(pos, static_cast<std::uint8_t>(bit));
            }
            BitTerm t = make_bit_term(std::move(lits));
            validate(t, p.n);
            bits.push_back(std::move(t));
        } else {
            std::vector<std::pair<std::uint64_t, Value>> ps;
            for (const auto& [i, y] : pairs) {
                if (y >= p.M) throw EncodingError("proper term value " + std::to_string(y) + " >= M");
                ps.emplace_back(i, static_cast<Value>(y));
            }
            ProperTerm t = make_proper_term(std::move(ps));
            validate(t, p);
            proper.push_back(std::move(t));
        }
    }
    return kind == "bit" ? Dnf::of_bits(std::move(bits)) : Dnf::of_proper(std::move(proper));
}

// --- strategies ---------------------------------------------------------------------
//   node := {"accept": bool} | {"query": dnf, "yes": node, "no": node}

inline constexpr std::size_t kMaxStrategyDepth = 64;

inline QueryStrategy strategy_from_json(const Json& j, const Params& p, std::size_t level = 0) {
    if (level > kMaxStrategyDepth) throw EncodingError("strategy nested deeper than 64 queries");
    if (!j.is_object()) throw EncodingError("strategy node must be an object");
    if (j.contains("accept")) return QueryStrategy::leaf(j.at("accept").get<bool>());
    if (!j.contains("query") || !j.contains("yes") || !j.contains("no")) {
        throw EncodingError("strategy node needs \"accept\" or all of \"query\", \"yes\", \"no\"");
    }
    return QueryStrategy::ask(dnf_from_json(j.at("query"), p), strategy_from_json(j.at("yes"), p, level + 1),
                              strategy_from_json(j.at("no"), p, level + 1));
}

inline Json strategy_json(const QueryStrategy& s, int at = 0) {
    const auto& node = s.nodes()[at];
    if (!node.query) return {{"accept", node.accept}};
    return {{"query", dnf_json(*node.query)},
            {"yes", strategy_json(s, node.if_true)},
            {"no", strategy_json(s, node.if_false)}};
}

// --- fooling ------------------------------------------------------------------------

inline Json fooling_json(const FoolingReport& r) {
    Json j = {{"subject", r.subject}, {"mode", mode_name(r.mode)}, {"k", r.k},
              {"lower", exact_json(r.lower)}, {"upper", exact_json(r.upper)},
              {"vacuous", r.vacuous}, {"out_of_regime", r.out_of_regime}, {"pass", r.pass}};
    if (r.mode == Mode::exact) {
        j["pu"] = exact_json(r.pu);
        j["pd"] = exact_json(r.pd);
        j["ratio"] = exact_json(r.ratio);
    } else {
        j["pu"] = estimate_json(r.pu_est);
        j["pd"] = estimate_json(r.pd_est);
        j["ratio"] = r.ratio_est;
        j["ratio_half_width"] = r.ratio_half_width;
    }
    return j;
}

inline Json adaptive_json(const AdaptiveReport& r) {
    Json j = {{"mode", mode_name(r.mode)}, {"T", r.depth}, {"w", r.width},
              {"bound", exact_json(r.bound)}, {"path_bound", exact_json(r.path_bound)}, {"pass", r.pass}};
    if (r.mode == Mode::exact) {
        j["pu_accept"] = exact_json(r.pu_accept);
        j["pd_accept"] = exact_json(r.pd_accept);
        j["bias"] = exact_json(r.bias);
    } else {
        j["pu_accept"] = estimate_json(r.pu_est);
        j["pd_accept"] = estimate_json(r.pd_est);
        j["bias"] = r.bias_est;
        j["bias_half_width"] = r.bias_half_width;
    }
    return j;
}

inline Json predictor_json(const PredictorReport& r) {
    Json j = {{"mode", mode_name(r.mode)}, {"in_hypothesis", r.in_hypothesis}};
    if (r.mode == Mode::exact) {
        j["agreement"] = exact_json(r.agreement);
        j["pu"] = exact_json(r.pu);
        j["pd"] = exact_json(r.pd);
        j["gap"] = exact_json(r.gap);
    } else {
        j["agreement"] = estimate_json(r.agreement_est);
        j["pu"] = estimate_json(r.pu_est);
        j["pd"] = estimate_json(r.pd_est);
        j["gap"] = r.gap_est;
        j["gap_half_width"] = r.gap_half_width;
    }
    return j;
}

// --- circuits -------------------------------------------------------------------------

inline Json circuit_json(const Circuit& c) {
    Json gates = Json::array();
    for (std::size_t g = 0; g < c.gates().size(); ++g) {
        const auto& gate = c.gates()[g];
        Json node = {{"id", g}, {"type", kind_name(gate.kind)}, {"inputs", gate.children}};
        if (gate.kind == Circuit::Kind::input) node["bit"] = gate.bit;
        if (gate.kind == Circuit::Kind::constant) node["value"] = gate.value;
        gates.push_back(std::move(node));
    }
    const CircuitStats s = c.stats();
    return {{"arity", c.arity()}, {"output", c.output()}, {"gates", gates},
            {"size", s.size}, {"depth", s.depth}, {"bottom_fanin", s.bottom_fanin}};
}

// --- sensitivity ----------------------------------------------------------------------

inline Json block_family_json(const BlockFamily& bf) {
    return {{"target", bf.target}, {"anchor", bits_json(bf.anchor)}, {"blocks", bf.blocks},
            {"count", bf.size()}, {"verified", bf.verified}};
}

inline Json block_check_json(const BlockCheck& c) {
    return {{"pass", c.pass}, {"count", c.count}, {"reason", c.reason}, {"witness", c.witness}};
}

inline Json bs_average_json(const BsAverageReport& r) {
    Json j = {{"mode", mode_name(r.mode)},
              {"points", r.points},
              {"one_inputs", r.one_inputs},
              {"covered_zero_inputs", r.covered_zero_inputs},
              {"other_zero_inputs", r.other_zero_inputs},
              {"min_one_bs", r.min_one_bs},
              {"min_covered_zero_bs", r.min_covered_zero_bs},
              {"all_verified", r.all_verified},
              {"pigeonhole_ok", r.pigeonhole_ok},
              {"ones_exact", r.ones_exact},
              {"normalized_by_n_over_log_n", r.normalized}};
    if (r.mode == Mode::exact) {
        j["bs_one"] = exact_json(r.bs_one);
        j["bs_zero"] = exact_json(r.bs_zero);
        j["bs_all"] = exact_json(r.bs_all);
        j["covered_mass"] = exact_json(r.covered_mass);
    } else {
        j["bs_one"] = r.bs_one_value;
        j["bs_zero"] = r.bs_zero_value;
        j["bs_all"] = r.bs_all_value;
        j["covered_mass"] = r.covered_mass_value;
    }
    return j;
}

inline Json avg_sensitivity_json(const AvgSensitivity& r) {
    Json j = {{"mode", mode_name(r.mode)}, {"points", r.points}, {"zero_points", r.zero_points},
              {"one_points", r.one_points}};
    if (r.mode == Mode::exact) {
        j["overall"] = exact_json(r.overall);
        j["on_zero"] = exact_json(r.on_zero);
        j["on_one"] = exact_json(r.on_one);
    } else {
        j["overall"] = r.overall_value;
        j["on_zero"] = r.on_zero_value;
        j["on_one"] = r.on_one_value;
    }
    return j;
}

// --- polynomials ------------------------------------------------------------------------

template <class T>
Json term_combination_json(const TermCombination<T>& tc) {
    Json terms = Json::array();
    for (const auto& t : tc.terms) {
        Json lits = Json::array();
        Json signs = Json::array();
        for (const auto& [pos, bit] : t.term.literals) {
            lits.push_back(pos);
            signs.push_back(bit);
        }
        terms.push_back({{"literals", lits}, {"signs", signs}, {"coefficient", scalar_json(t.coeff)}});
    }
    return {{"n", tc.n}, {"terms", terms}, {"weight", scalar_json(tc.weight())}};
}

template <class T>
Json fat_json(const FatLpResult<T>& r) {
    return {{"status", status_name(r.status)},
            {"exact", kExactScalar<T>},
            {"value", scalar_json(r.value)},
            {"lower_bound", scalar_json(r.lower_bound)},
            {"duality_gap", r.duality_gap},
            {"dual_infeasibility", r.dual_infeasibility},
            {"reproduces", r.reproduces},
            {"above_lower_bound", r.above_lower_bound},
            {"iterations", r.iterations},
            {"max_term_size", r.max_term_size},
            {"representation", term_combination_json(r.representation)}};
}

inline Json fooling_bound_json(const FoolingBoundReport& r) {
    return {{"eu", exact_json(r.eu)},       {"ed", exact_json(r.ed)},         {"gap", exact_json(r.gap)},
            {"middle", exact_json(r.middle)}, {"top", exact_json(r.top)},     {"weight", exact_json(r.weight)},
            {"degree", r.degree},           {"pass", r.pass}};
}

inline Json tradeoff_json(const TradeoffLine& l) {
    return {{"name", l.name},
            {"lhs", exact_json(l.lhs)},
            {"line1", exact_json(l.line1)},
            {"line2", exact_json(l.line2)},
            {"line3", l.line3},
            {"eu_delta", exact_json(l.eu_delta)},
            {"ed_delta", exact_json(l.ed_delta)},
            {"eu_delta_sq", exact_json(l.eu_delta_sq)},
            {"ed_delta_sq", exact_json(l.ed_delta_sq)},
            {"weight", exact_json(l.weight)},
            {"degree", l.degree},
            {"slack1", l.slack1},
            {"slack2", l.slack2},
            {"slack3", l.slack3},
            {"holds", l.holds}};
}

}  // namespace glnlab
