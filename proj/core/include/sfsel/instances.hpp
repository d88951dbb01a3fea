#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sfsel/system.hpp"

namespace sfsel {

struct WeightedSetCoverSpec {
    int universe_size = 0;
    std::vector<std::vector<int>> sets;  // elements 1..universe_size
    std::vector<double> weights;

    std::size_t num_sets() const { return sets.size(); }
};

// Encodes a weighted set cover problem as a feedback selection instance:
// one state per element, one per set, one hub state; the hub input can buy
// any set's output at that set's weight, and every set keeps a zero-cost
// self link. Throws InvalidParams on a malformed spec (empty universe,
// elements out of range, sets not covering the universe).
std::pair<StructuredSystem, CostMatrix> from_set_cover(const WeightedSetCoverSpec& spec);

struct ExtractedCover {
    std::vector<int> set_indices;  // 1-based, ascending
    double weight = 0.0;
};

// Reads the selected sets back out of a feedback set for an instance built by
// from_set_cover: set j is selected iff output j feeds the hub input.
ExtractedCover extract_cover(const FeedbackSet& fs, const WeightedSetCoverSpec& spec);

enum class InstanceKind { Dag, Hierarchy, Backedge, SelfDamped };

InstanceKind instance_kind_from_string(const std::string& name);
const char* to_string(InstanceKind kind);

struct RandomParams {
    int n = 6;                  // states (Dag/Backedge/SelfDamped) or SCCs (Hierarchy)
    double edge_density = 0.25; // probability of each off-diagonal state edge
    double io_density = 0.7;    // probability a state gets its own input/output
    int max_scc_size = 2;       // Hierarchy only
    int cost_min = 1;
    int cost_max = 9;
    double cost_density = 0.5;  // fraction of admissible pairs given a finite cost
    int max_finite_entries = 0; // 0 = unlimited
};

// Reproducible generators. SelfDamped and Backedge instances carry a star on
// every diagonal; Backedge and Hierarchy restrict finite costs to
// ancestor-reachable pairs; Hierarchy emits an arborescence of SCCs with a
// guaranteed finite self pair per SCC so the instance is always coverable.
std::pair<StructuredSystem, CostMatrix> random_instance(InstanceKind kind,
                                                        const RandomParams& params,
                                                        std::uint64_t seed);

// Versioned JSON on-disk form (*.sfsi.json). Unknown keys are rejected.
std::string write_instance(const StructuredSystem& sys, const CostMatrix& costs);
std::pair<StructuredSystem, CostMatrix> read_instance(const std::string& text);

std::pair<StructuredSystem, CostMatrix> load_instance_file(const std::string& path);
void save_instance_file(const std::string& path, const StructuredSystem& sys,
                        const CostMatrix& costs);

}  // namespace sfsel
