#pragma once

// Reference computations that follow the definitions literally and share no
// code with the library beyond the Instance container.

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "stackup/instance.hpp"
#include "stackup/seqgraph.hpp"

namespace oracle {

using stackup::Instance;

/// Pallets with a removed bin and a bin still waiting, by direct scan.
std::set<std::uint32_t> open_pallets(const Instance& inst, const std::vector<std::uint32_t>& cfg);

/// Pallet labels of the front bins.
std::set<std::string> front_labels(const Instance& inst, const std::vector<std::uint32_t>& cfg);

/// Label pairs (u, v), u != v, with a bin of u somewhere before a bin of v in one sequence.
std::set<std::pair<std::string, std::string>> sequence_graph_arcs(const Instance& inst);

/// Minimum over every interleaving of the sequences of the max open count.
int interleaving_optimum(const Instance& inst);

/// Max open count along a bin order given as 0-based global bin indices; -1 if
/// the order is not a FIFO processing.
int replay_bin_order(const Instance& inst, const std::vector<std::size_t>& bins);

/// Width of a vertex ordering straight from the definition.
int ordering_width(const stackup::SequenceDigraph& g, const std::vector<stackup::VertexId>& order);
/// Minimum width over all vertex orderings.
int separation_by_permutations(const stackup::SequenceDigraph& g);

/// Removes front bins of open pallets in random order until none remains.
std::vector<std::uint32_t> shuffled_closure(const Instance& inst, std::vector<std::uint32_t> cfg,
                                            std::mt19937_64& rng);

/// Random instance: each pallet gets a bin count in [r_min, r_max]; all bins
/// are shuffled and dealt to k sequences. Pallet labels are p1, p2, ...
Instance random_instance(std::mt19937_64& rng, int k, int m, int r_min, int r_max);

/// Random loop-free digraph on `vertices` vertices with arc probability `density`.
stackup::SequenceDigraph random_digraph(std::mt19937_64& rng, int vertices, double density);

/// Uniformly random configuration.
std::vector<std::uint32_t> random_configuration(const Instance& inst, std::mt19937_64& rng);

}  // namespace oracle
