#pragma once

#include <stdexcept>
#include <string>

namespace qmc {

// Two-walker contact process variants: Original stops on an arrival of the
// single connecting edge; Virtual doubles the connecting edge's rate while
// the walkers are adjacent.
enum class Process { Original, Virtual };

// Static: only the graph edges carry Poisson clocks. TimeVarying: every node
// also carries a self-loop clock sized so each node sees unit incident rate
// and the whole network ticks at rate n.
enum class TimeModel { Static, TimeVarying };

inline std::string to_string(Process p) {
    return p == Process::Original ? "original" : "virtual";
}

inline std::string to_string(TimeModel m) {
    return m == TimeModel::Static ? "static" : "time_varying";
}

inline Process process_from_string(const std::string& s) {
    if (s == "original") return Process::Original;
    if (s == "virtual") return Process::Virtual;
    throw std::invalid_argument("unknown process: " + s);
}

inline TimeModel time_model_from_string(const std::string& s) {
    if (s == "static") return TimeModel::Static;
    if (s == "time_varying") return TimeModel::TimeVarying;
    throw std::invalid_argument("unknown time model: " + s);
}

}  // namespace qmc
