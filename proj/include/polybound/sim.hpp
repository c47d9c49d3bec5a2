#pragma once

#include "polybound/program.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace polybound {

struct Configuration {
    Loc loc;
    State state;

    auto operator<=>(const Configuration &) const = default;
    bool operator==(const Configuration &) const = default;
};

/// All evaluation steps (t, c') with c ->_t c'. Empty for terminal configurations.
std::vector<std::pair<std::size_t, Configuration>> step(const Program &p, const Configuration &c);

struct ExhaustiveResult {
    bool exceeded = false;
    std::uint64_t rc = 0;
    /// Per transition: maximum number of uses over all runs.
    std::vector<std::uint64_t> per_transition;
    /// One longest run as (transition, configuration after it), starting after (l0, sigma0).
    std::vector<std::pair<std::size_t, Configuration>> longest_run;
    std::size_t configurations = 0;
};

struct ExploreLimits {
    std::uint64_t max_steps = 10000;
    std::size_t max_configurations = 1000000;
};

/// Explores every nondeterministic branch from (l0, sigma0). A run of length max_steps, a
/// revisited configuration on the current path, or exhausting the configuration budget yields
/// `exceeded`.
ExhaustiveResult exhaustive_run(const Program &p, const State &initial, ExploreLimits limits = {});

/// Iterates a single transition as a while-loop. Returns the number of iterations, or nullopt
/// if the guard still holds after `cap` iterations.
std::optional<std::uint64_t> iterate_loop(const Transition &t, State s, std::uint64_t cap);

} // namespace polybound
