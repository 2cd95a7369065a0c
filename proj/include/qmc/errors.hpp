#pragma once

#include <stdexcept>

namespace qmc {

struct DisconnectedGraph : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SelfLoopRejected : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NodeOutOfRange : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GenerationFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SingularSystem : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NoHiddenVertex : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TimeCapReached : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CensoredSample : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace qmc
