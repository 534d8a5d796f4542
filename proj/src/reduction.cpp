#include "cqed/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cqed {

namespace {
constexpr double kEdgeThreshold = 1e-14;
}

std::size_t ReducedSpace::count(Provenance p) const {
    return static_cast<std::size_t>(std::count(provenance.begin(), provenance.end(), p));
}

std::vector<double> amplitude_profile(const ClosedRun& run) {
    require(!run.states.empty(), ErrorCode::logic, "amplitude_profile: empty run");
    std::vector<double> profile(run.states.front().dim(), 0.0);
    for (const auto& psi : run.states)
        for (std::size_t i = 0; i < profile.size(); ++i)
            profile[i] = std::max(profile[i], std::abs(psi.amp[i]));
    return profile;
}

std::vector<double> amplitude_profile(const OpenRun& run) {
    require(!run.states.empty(), ErrorCode::logic, "amplitude_profile: empty run");
    std::vector<double> profile(run.states.front().dim, 0.0);
    for (const auto& rho : run.states)
        for (std::size_t i = 0; i < profile.size(); ++i) {
            const double p = std::max(0.0, rho.m[i * rho.dim + i].real());
            profile[i] = std::max(profile[i], std::sqrt(p));
        }
    return profile;
}

std::vector<std::size_t> select_top(std::span<const double> profile, double keep_fraction,
                                    std::size_t initial_index) {
    const std::size_t n = profile.size();
    require(n > 0, ErrorCode::logic, "select_top: empty profile");
    require(keep_fraction > 0.0 && keep_fraction <= 1.0, ErrorCode::config,
            "keep_fraction must be in (0, 1]");
    require(initial_index < n, ErrorCode::logic, "select_top: bad initial index");

    std::size_t k = keep_fraction >= 1.0
                        ? n
                        : static_cast<std::size_t>(std::ceil(keep_fraction * double(n)));
    k = std::clamp<std::size_t>(k, 1, n);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return profile[a] != profile[b] ? profile[a] > profile[b] : a < b;
    });
    std::vector<std::size_t> out(order.begin(), order.begin() + k);
    if (std::find(out.begin(), out.end(), initial_index) == out.end())
        out.back() = initial_index;
    std::sort(out.begin(), out.end());
    return out;
}

TransitionGraph build_graph(const SparseOperator& h, std::span<const std::size_t> subset) {
    require(std::is_sorted(subset.begin(), subset.end()), ErrorCode::logic,
            "build_graph: subset must be sorted");
    require(h.hermitian(), ErrorCode::logic, "build_graph: H must be Hermitian");

    TransitionGraph g;
    g.nodes.assign(subset.begin(), subset.end());
    g.adj.assign(subset.size(), {});
    auto pos_of = [&](std::size_t full) -> std::ptrdiff_t {
        auto it = std::lower_bound(g.nodes.begin(), g.nodes.end(), full);
        if (it == g.nodes.end() || *it != full) return -1;
        return it - g.nodes.begin();
    };
    for (const auto& e : h.entries()) {
        if (e.row >= e.col) continue;  // undirected, diagonal excluded
        if (std::abs(e.value) <= kEdgeThreshold) continue;
        const auto r = pos_of(e.row), c = pos_of(e.col);
        if (r < 0 || c < 0) continue;
        g.adj[r].push_back({static_cast<std::size_t>(c), std::abs(e.value)});
        g.adj[c].push_back({static_cast<std::size_t>(r), std::abs(e.value)});
        ++g.edge_count;
    }
    return g;
}

bool is_connected(const TransitionGraph& g) {
    require(!g.nodes.empty(), ErrorCode::logic, "is_connected: empty graph");
    std::vector<char> seen(g.nodes.size(), 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t visited = 1;
    while (!stack.empty()) {
        const std::size_t u = stack.back();
        stack.pop_back();
        for (const auto& [v, w] : g.adj[u]) {
            if (!seen[v]) {
                seen[v] = 1;
                ++visited;
                stack.push_back(v);
            }
        }
    }
    return visited == g.nodes.size();
}

std::vector<std::size_t> neighbors_of(const SparseOperator& h,
                                      std::span<const std::size_t> subset) {
    require(h.hermitian(), ErrorCode::logic, "neighbors_of: H must be Hermitian");
    std::vector<char> inside(h.dim(), 0);
    for (std::size_t s : subset) {
        require(s < h.dim(), ErrorCode::logic, "neighbors_of: index out of range");
        inside[s] = 1;
    }
    std::vector<char> found(h.dim(), 0);
    // H is Hermitian, so scanning rows of subset members covers their columns.
    const Csr hc(h);
    for (std::size_t s : subset) {
        for (std::size_t p = hc.row_ptr[s]; p < hc.row_ptr[s + 1]; ++p) {
            const std::size_t j = hc.col[p];
            if (j == s || inside[j] || std::abs(hc.val[p]) <= kEdgeThreshold) continue;
            found[j] = 1;
        }
    }
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < h.dim(); ++j)
        if (found[j]) out.push_back(j);
    return out;
}

namespace {

ReducedSpace finalize(const SparseOperator& h, std::vector<std::size_t> kept,
                      std::vector<Provenance> prov, std::size_t initial_index,
                      std::size_t seed_count, std::size_t iterations, bool fallback) {
    // Sort kept (with provenance attached) into ascending index order.
    std::vector<std::size_t> order(kept.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return kept[a] < kept[b]; });
    ReducedSpace r;
    r.kept.reserve(kept.size());
    r.provenance.reserve(kept.size());
    for (std::size_t o : order) {
        r.kept.push_back(kept[o]);
        r.provenance.push_back(prov[o]);
    }
    r.dim_full = h.dim();
    r.initial_index = initial_index;
    r.seed_count = seed_count;
    r.repair_iterations = iterations;
    r.fallback_component = fallback;
    r.full_to_reduced.assign(h.dim(), -1);
    for (std::size_t i = 0; i < r.kept.size(); ++i)
        r.full_to_reduced[r.kept[i]] = static_cast<std::ptrdiff_t>(i);
    return r;
}

}  // namespace

ReducedSpace repair_connectivity(const SparseOperator& h, std::vector<std::size_t> seeds,
                                 std::size_t initial_index) {
    require(!seeds.empty(), ErrorCode::logic, "repair_connectivity: empty seed set");
    std::sort(seeds.begin(), seeds.end());
    seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
    require(std::binary_search(seeds.begin(), seeds.end(), initial_index), ErrorCode::logic,
            "repair_connectivity: seeds must contain the initial state");

    std::vector<std::size_t> kept = seeds;
    std::vector<Provenance> prov(kept.size(), Provenance::seed_amplitude);
    std::size_t iterations = 0;

    while (true) {
        TransitionGraph g = build_graph(h, kept);
        if (is_connected(g))
            return finalize(h, std::move(kept), std::move(prov), initial_index,
                            seeds.size(), iterations, false);

        std::vector<std::size_t> frontier = neighbors_of(h, kept);
        if (frontier.empty()) {
            // No way to join the pieces: the full graph is disconnected here.
            // Keep the component of the initial state.
            const std::size_t start = static_cast<std::size_t>(
                std::lower_bound(g.nodes.begin(), g.nodes.end(), initial_index) -
                g.nodes.begin());
            std::vector<char> seen(g.nodes.size(), 0);
            std::vector<std::size_t> stack{start};
            seen[start] = 1;
            while (!stack.empty()) {
                const std::size_t u = stack.back();
                stack.pop_back();
                for (const auto& [v, w] : g.adj[u])
                    if (!seen[v]) {
                        seen[v] = 1;
                        stack.push_back(v);
                    }
            }
            std::vector<std::size_t> component;
            std::vector<Provenance> cprov;
            for (std::size_t i = 0; i < g.nodes.size(); ++i)
                if (seen[i]) {
                    component.push_back(g.nodes[i]);
                    cprov.push_back(prov[i]);
                }
            return finalize(h, std::move(component), std::move(cprov), initial_index,
                            seeds.size(), iterations, true);
        }

        // Merge the whole frontier, keeping kept/prov aligned and sorted.
        std::vector<std::size_t> merged;
        std::vector<Provenance> mprov;
        merged.reserve(kept.size() + frontier.size());
        std::size_t a = 0, b = 0;
        while (a < kept.size() || b < frontier.size()) {
            if (b == frontier.size() || (a < kept.size() && kept[a] < frontier[b])) {
                merged.push_back(kept[a]);
                mprov.push_back(prov[a]);
                ++a;
            } else {
                merged.push_back(frontier[b]);
                mprov.push_back(Provenance::neighbor_repair);
                ++b;
            }
        }
        kept = std::move(merged);
        prov = std::move(mprov);
        ++iterations;
    }
}

SparseOperator project(const SparseOperator& op, const ReducedSpace& r) {
    require(op.dim() == r.dim_full, ErrorCode::logic, "project: dimension mismatch");
    return op.restricted(r.kept);
}

Observable project(const Observable& obs, const ReducedSpace& r) {
    return {project(obs.op, r), obs.label};
}

std::vector<LindbladChannel> project(std::span<const LindbladChannel> channels,
                                     const ReducedSpace& r) {
    std::vector<LindbladChannel> out;
    out.reserve(channels.size());
    for (const auto& ch : channels) out.push_back({project(ch.a, r), ch.gamma, ch.label});
    return out;
}

StateVector project(const StateVector& psi, const ReducedSpace& r,
                    double* discarded_weight) {
    require(psi.dim() == r.dim_full, ErrorCode::logic, "project: dimension mismatch");
    std::vector<Complex> amp(r.kept.size());
    double kept_weight = 0.0;
    for (std::size_t i = 0; i < r.kept.size(); ++i) {
        amp[i] = psi.amp[r.kept[i]];
        kept_weight += std::norm(amp[i]);
    }
    const double total = psi.norm();
    const double discarded = std::max(0.0, total * total - kept_weight);
    if (discarded_weight) *discarded_weight = discarded;
    require(kept_weight > 0.0, ErrorCode::logic,
            "project: the state has zero weight on the kept set");
    const double scale = 1.0 / std::sqrt(kept_weight);
    for (auto& v : amp) v *= scale;
    return StateVector{nullptr, std::move(amp)};
}

}  // namespace cqed
