#pragma once

#include <string>

#include "ppsnd/simnet.hpp"

namespace ppsnd {

struct ScenarioOutcome {
    std::vector<std::pair<std::string, SessionResult>> results;

    // What each curious node retained: per peer, a session count and the
    // last measured distances. Nothing else survives in its state.
    struct CuriousKnowledge {
        std::string node;
        Pid peer_pid = 0;
        uint64_t sessions = 0;
        double last_d_tof_m = 0;
        double last_d_he_m = 0;
    };
    std::vector<CuriousKnowledge> curious;

    // Sessions turned away by a node's minimum-spacing rule, when nonzero.
    std::vector<std::pair<std::string, uint64_t>> refusals;

    std::string trace_jsonl;
    uint64_t events = 0;
};

// Builds a world from a JSON scenario description and runs it to completion.
// Schema errors throw ConfigError; runtime failures throw SimulationError.
ScenarioOutcome run_scenario(const std::string& json_text);

ScenarioOutcome run_scenario_file(const std::string& path);

}  // namespace ppsnd
