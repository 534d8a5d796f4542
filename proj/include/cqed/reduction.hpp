#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "cqed/dynamics.hpp"
#include "cqed/sparse.hpp"

namespace cqed {

// Basis states as nodes, off-diagonal Hamiltonian entries above 1e-14 as
// undirected weighted edges.
struct TransitionGraph {
    std::vector<std::size_t> nodes;  // sorted full-space indices
    std::vector<std::vector<std::pair<std::size_t, double>>> adj;  // (node position, |H|)
    std::size_t edge_count = 0;
};

enum class Provenance { seed_amplitude, neighbor_repair };

// Basis subset selected for a reduced simulation, with index maps and the
// per-state origin tag.
struct ReducedSpace {
    std::vector<std::size_t> kept;  // sorted full-space indices
    std::vector<Provenance> provenance;
    std::vector<std::ptrdiff_t> full_to_reduced;  // -1 when dropped
    std::size_t dim_full = 0;
    std::size_t initial_index = 0;
    std::size_t seed_count = 0;
    std::size_t repair_iterations = 0;
    // Set when the full transition graph itself is disconnected and the
    // result fell back to the connected component of the initial state.
    bool fallback_component = false;

    std::size_t dim() const { return kept.size(); }
    std::size_t count(Provenance p) const;
};

// Per-basis-state max |amplitude| over a pilot run (sqrt of the diagonal for
// open-system pilots).
std::vector<double> amplitude_profile(const ClosedRun& run);
std::vector<double> amplitude_profile(const OpenRun& run);

// ceil(keep_fraction * dim) indices of largest profile, ties broken by
// ascending index; always contains initial_index.
std::vector<std::size_t> select_top(std::span<const double> profile, double keep_fraction,
                                    std::size_t initial_index);

TransitionGraph build_graph(const SparseOperator& h, std::span<const std::size_t> subset);
bool is_connected(const TransitionGraph& g);

// All states outside `subset` reachable from it by one application of H.
std::vector<std::size_t> neighbors_of(const SparseOperator& h,
                                      std::span<const std::size_t> subset);

// Grows the subset by whole neighbor frontiers until its induced transition
// graph is connected. When growth stalls because the full graph is itself
// disconnected, returns the connected component of the initial state and
// flags the fallback.
ReducedSpace repair_connectivity(const SparseOperator& h, std::vector<std::size_t> seeds,
                                 std::size_t initial_index);

SparseOperator project(const SparseOperator& op, const ReducedSpace& r);
Observable project(const Observable& obs, const ReducedSpace& r);
std::vector<LindbladChannel> project(std::span<const LindbladChannel> channels,
                                     const ReducedSpace& r);
// Renormalized restriction; reports the discarded probability weight and
// fails when the state has no weight on the kept set.
StateVector project(const StateVector& psi, const ReducedSpace& r,
                    double* discarded_weight = nullptr);

}  // namespace cqed
