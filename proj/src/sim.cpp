#include "polybound/sim.hpp"

#include <map>

namespace polybound {

std::vector<std::pair<std::size_t, Configuration>> step(const Program &p, const Configuration &c) {
    std::vector<std::pair<std::size_t, Configuration>> out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const auto &t = p.transition(i);
        if (t.src == c.loc && t.guard.holds(c.state)) {
            out.emplace_back(i, Configuration{t.tgt, apply_update(t.update, c.state)});
        }
    }
    return out;
}

namespace {

struct Node {
    std::vector<std::pair<std::size_t, std::size_t>> succ; // (transition, node)
    std::size_t next = 0;
    bool done = false;
    bool on_stack = false;
    std::uint64_t longest = 0;
    std::vector<std::uint64_t> counts;
    std::size_t best = SIZE_MAX; // index into succ
};

} // namespace

ExhaustiveResult exhaustive_run(const Program &p, const State &initial, ExploreLimits limits) {
    ExhaustiveResult res;
    res.per_transition.assign(p.size(), 0);

    std::map<Configuration, std::size_t> ids;
    std::vector<Configuration> configs;
    std::vector<Node> nodes;
    auto intern = [&](const Configuration &c) {
        auto [it, fresh] = ids.emplace(c, nodes.size());
        if (fresh) {
            configs.push_back(c);
            nodes.emplace_back();
        }
        return it->second;
    };

    const std::size_t root = intern(Configuration{p.init(), initial});
    std::vector<std::size_t> stack{root};
    nodes[root].on_stack = true;
    for (auto &[t, c] : step(p, configs[root])) {
        std::size_t id = intern(c);
        nodes[root].succ.emplace_back(t, id);
    }

    while (!stack.empty()) {
        if (nodes.size() > limits.max_configurations || stack.size() > limits.max_steps + 1) {
            res.exceeded = true;
            res.configurations = nodes.size();
            return res;
        }
        std::size_t cur = stack.back();
        Node &n = nodes[cur];
        if (n.next < n.succ.size()) {
            std::size_t child = n.succ[n.next].second;
            if (nodes[child].on_stack) {
                res.exceeded = true; // a configuration repeats: infinite run
                res.configurations = nodes.size();
                return res;
            }
            if (!nodes[child].done) {
                nodes[child].on_stack = true;
                stack.push_back(child);
                for (auto &[t, c] : step(p, configs[child])) {
                    std::size_t id = intern(c);
                    nodes[child].succ.emplace_back(t, id);
                }
                continue;
            }
            ++nodes[cur].next;
            continue;
        }
        n.counts.assign(p.size(), 0);
        for (std::size_t k = 0; k < n.succ.size(); ++k) {
            auto [t, child] = n.succ[k];
            const Node &c = nodes[child];
            if (c.longest + 1 > n.longest || n.best == SIZE_MAX) {
                n.longest = c.longest + 1;
                n.best = k;
            }
            for (std::size_t i = 0; i < p.size(); ++i) {
                n.counts[i] = std::max(n.counts[i], c.counts[i] + (i == t ? 1 : 0));
            }
        }
        n.done = true;
        n.on_stack = false;
        stack.pop_back();
        if (!stack.empty()) {
            ++nodes[stack.back()].next;
        }
    }

    res.rc = nodes[root].longest;
    res.per_transition = nodes[root].counts;
    res.configurations = nodes.size();
    if (res.rc > limits.max_steps) {
        res.exceeded = true;
        return res;
    }
    for (std::size_t cur = root; nodes[cur].best != SIZE_MAX;) {
        auto [t, child] = nodes[cur].succ[nodes[cur].best];
        res.longest_run.emplace_back(t, configs[child]);
        cur = child;
    }
    return res;
}

std::optional<std::uint64_t> iterate_loop(const Transition &t, State s, std::uint64_t cap) {
    for (std::uint64_t n = 0; n <= cap; ++n) {
        if (!t.guard.holds(s)) {
            return n;
        }
        s = apply_update(t.update, s);
    }
    return std::nullopt;
}

} // namespace polybound
