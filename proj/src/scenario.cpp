#include "ppsnd/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace ppsnd {

namespace {

using nlohmann::json;

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + ": expected an object");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (!allowed.count(key)) throw ConfigError(where + ": unknown key \"" + key + "\"");
    }
}

SimTime scaled_time(const json& j, const std::string& key, double ps_per_unit, SimTime fallback) {
    if (!j.contains(key)) return fallback;
    double v = j.at(key).get<double>();
    if (!std::isfinite(v) || v < 0) throw ConfigError(key + ": must be a non-negative number");
    return llround(v * ps_per_unit);
}

double number(const json& j, const std::string& key, double fallback) {
    return j.contains(key) ? j.at(key).get<double>() : fallback;
}

std::string node_name(const json& j, const std::string& where) {
    if (!j.contains("name")) throw ConfigError(where + ": missing \"name\"");
    std::string name = j.at("name").get<std::string>();
    if (name.empty()) throw ConfigError(where + ": empty node name");
    return name;
}

PlanePoint point(const json& j) {
    return {number(j, "x_m", 0), number(j, "y_m", 0)};
}

}  // namespace

ScenarioOutcome run_scenario(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("scenario is not valid JSON: ") + e.what());
    }

    try {
        check_keys(j,
                   {"protocol", "seed", "max_events", "anchor", "radio_range_m", "discovery_range_m",
                    "epsilon_m", "turnaround_us", "session_spacing_s", "normalize_factor",
                    "paillier_bits", "wallet", "nodes", "curious", "relays", "chain_relays",
                    "eavesdroppers", "forgers", "sessions"},
                   "scenario");

        if (!j.contains("protocol")) throw ConfigError("scenario: missing \"protocol\"");
        std::string proto = j.at("protocol").get<std::string>();
        if (proto != "ppsnd" && proto != "snd") {
            throw ConfigError("protocol must be \"ppsnd\" or \"snd\"");
        }

        WorldConfig wc;
        wc.protocol = proto == "ppsnd" ? Protocol::Ppsnd : Protocol::Snd;
        wc.seed = j.contains("seed") ? j.at("seed").get<uint64_t>() : 1;
        wc.max_events = j.contains("max_events") ? j.at("max_events").get<uint64_t>() : 1'000'000;
        if (j.contains("anchor")) {
            check_keys(j.at("anchor"), {"lat", "lng"}, "anchor");
            wc.anchor.lat = j.at("anchor").at("lat").get<double>();
            wc.anchor.lng = j.at("anchor").at("lng").get<double>();
        }
        wc.session.r_m = number(j, "radio_range_m", wc.session.r_m);
        wc.session.r_snd_m = number(j, "discovery_range_m", wc.session.r_snd_m);
        wc.session.epsilon_m = number(j, "epsilon_m", wc.session.epsilon_m);
        wc.session.delta_proc_ps = scaled_time(j, "turnaround_us", 1e6, wc.session.delta_proc_ps);
        wc.session.tau_snd_ps = scaled_time(j, "session_spacing_s", 1e12, wc.session.tau_snd_ps);
        if (j.contains("normalize_factor")) {
            wc.session.normalize_factor = j.at("normalize_factor").get<int64_t>();
        }
        if (j.contains("paillier_bits")) {
            wc.session.paillier_bits = j.at("paillier_bits").get<unsigned>();
        }
        wc.session.validate();

        size_t wallet_k = 1;
        SimTime wallet_tau = int64_t(600) * 1'000'000'000'000;
        SimTime wallet_start = 0;
        if (j.contains("wallet")) {
            const json& w = j.at("wallet");
            check_keys(w, {"k", "lifetime_s", "start_us"}, "wallet");
            if (w.contains("k")) wallet_k = w.at("k").get<size_t>();
            wallet_tau = scaled_time(w, "lifetime_s", 1e12, wallet_tau);
            wallet_start = scaled_time(w, "start_us", 1e6, wallet_start);
        }
        if (wallet_k == 0) throw ConfigError("wallet.k must be at least 1");

        if (!j.contains("nodes") || !j.at("nodes").is_array() || j.at("nodes").empty()) {
            throw ConfigError("scenario: \"nodes\" must be a non-empty array");
        }

        DeterministicRng root(wc.seed);
        TrustDomain trust(wc.session.paillier_bits, root.fork("trust"));
        World world(wc, trust);

        auto enroll = [&](const std::string& name) {
            return trust.enroll("identity-" + name + "-longterm-credential", wallet_k, wallet_tau,
                                wallet_start, wc.session.paillier_bits, root.fork("enroll:" + name));
        };

        std::vector<HonestNode*> endpoints;
        std::vector<CuriousNode*> observers;

        for (const json& n : j.at("nodes")) {
            check_keys(n, {"name", "x_m", "y_m"}, "node");
            std::string name = node_name(n, "node");
            endpoints.push_back(&world.add_honest(name, point(n), enroll(name)));
        }
        for (const json& n : j.value("curious", json::array())) {
            check_keys(n, {"name", "x_m", "y_m", "first_us", "period_s", "sessions"}, "curious");
            std::string name = node_name(n, "curious");
            SimTime first = scaled_time(n, "first_us", 1e6, 0);
            SimTime period = scaled_time(n, "period_s", 1e12, 300'000'000'000'000);
            uint64_t budget = n.contains("sessions") ? n.at("sessions").get<uint64_t>() : 1;
            CuriousNode& c = world.add_curious(name, point(n), enroll(name), first, period, budget);
            endpoints.push_back(&c);
            observers.push_back(&c);
        }
        for (const json& n : j.value("relays", json::array())) {
            check_keys(n, {"name", "x_m", "y_m", "delay_ns"}, "relay");
            world.add_relay(node_name(n, "relay"), point(n), scaled_time(n, "delay_ns", 1e3, 1'000'000));
        }
        for (const json& n : j.value("chain_relays", json::array())) {
            check_keys(n, {"name", "ax_m", "ay_m", "bx_m", "by_m", "delay_ns"}, "chain_relay");
            PlanePoint a{number(n, "ax_m", 0), number(n, "ay_m", 0)};
            PlanePoint b{number(n, "bx_m", 0), number(n, "by_m", 0)};
            world.add_chain_relay(node_name(n, "chain_relay"), a, b,
                                  scaled_time(n, "delay_ns", 1e3, 1'000'000));
        }
        for (const json& n : j.value("eavesdroppers", json::array())) {
            check_keys(n, {"name", "x_m", "y_m"}, "eavesdropper");
            world.add_eavesdropper(node_name(n, "eavesdropper"), point(n));
        }
        for (const json& n : j.value("forgers", json::array())) {
            check_keys(n, {"name", "x_m", "y_m", "forge_ranging", "flood", "flood_first_us",
                           "flood_period_ms"},
                       "forger");
            bool forge_ranging = n.value("forge_ranging", true);
            uint64_t flood = n.contains("flood") ? n.at("flood").get<uint64_t>() : 0;
            world.add_forger(node_name(n, "forger"), point(n), forge_ranging, flood,
                             scaled_time(n, "flood_first_us", 1e6, 0),
                             scaled_time(n, "flood_period_ms", 1e9, 1'000'000'000));
        }
        for (const json& s : j.value("sessions", json::array())) {
            check_keys(s, {"initiator", "at_us"}, "session");
            if (!s.contains("initiator")) throw ConfigError("session: missing \"initiator\"");
            world.schedule_session(s.at("initiator").get<std::string>(),
                                   scaled_time(s, "at_us", 1e6, 0));
        }

        world.run();

        ScenarioOutcome outcome;
        outcome.results = world.results();
        for (const CuriousNode* c : observers) {
            for (const auto& [peer, k] : c->knowledge()) {
                outcome.curious.push_back(
                    {c->name(), peer, k.sessions, k.last_d_tof_m, k.last_d_he_m});
            }
        }
        for (const HonestNode* n : endpoints) {
            uint64_t refused = n->endpoint().rate_refusals();
            if (refused > 0) outcome.refusals.emplace_back(n->name(), refused);
        }
        outcome.trace_jsonl = world.transcript().to_jsonl();
        outcome.events = world.events_processed();
        return outcome;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("scenario: ") + e.what());
    }
}

ScenarioOutcome run_scenario_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open scenario file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return run_scenario(buf.str());
}

}  // namespace ppsnd
