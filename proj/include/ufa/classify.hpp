#pragma once

#include <cstdint>
#include <vector>

#include "ufa/foundational.hpp"
#include "ufa/relation.hpp"

namespace ufa {

bool is_quasiorder(const Relation& r);
bool is_partial_order(const Relation& r);
bool is_tournament(const Relation& r);

// Counts of the parts a quasi-order decomposes into: finitely many trivial
// elements plus, per seed, one countably infinite part of the named shape.
struct OrderDecomposition {
    std::uint64_t trivial_count = 0;
    std::uint64_t ascending_chains = 0;
    std::uint64_t descending_chains = 0;
    std::uint64_t antichains = 0;
    std::uint64_t strongly_connected = 0;
};

OrderDecomposition decompose_order(const Relation& r);  // NotAQuasiOrder

struct TournamentDecomposition {
    std::uint64_t trivial_count = 0;
    std::uint64_t complete_ascending = 0;
    std::uint64_t complete_descending = 0;
    std::uint64_t near_complete_ascending = 0;
    std::uint64_t near_complete_descending = 0;
};

TournamentDecomposition decompose_tournament(const Relation& r);  // NotATournament

struct ComponentsReport {
    std::uint64_t infinite_component_count = 0;
    std::uint64_t finite_size_bound = 0;
    // First few members of each infinite component, keyed by its minimal
    // representative (which is the first entry of each sample row).
    std::vector<std::vector<std::uint64_t>> infinite_component_samples;
};

inline constexpr std::uint64_t kDefaultBoundBudget = 16;

ComponentsReport components_report(const Relation& r,
                                   std::uint64_t k_max = kDefaultBoundBudget);

enum class PathType { Outward, Inward, BiInfinite, NotApplicable };

const char* path_type_name(PathType t);

struct OrbitTags {
    std::uint64_t representative = 0;
    bool contains_cycle = false;
    bool has_undefined_point = false;
    bool has_infinite_indegree_vertex = false;
    PathType path_type = PathType::NotApplicable;
};

struct MapOrbitReport {
    bool is_partial_map = false;
    bool is_total = false;
    bool is_injective = false;
    bool is_surjective = false;
    std::uint64_t finite_orbit_size_bound = 0;
    std::uint64_t infinite_orbit_count = 0;
    std::vector<OrbitTags> orbits;  // one per infinite orbit, by representative
};

MapOrbitReport classify_map(const Relation& r,
                            std::uint64_t k_max = kDefaultBoundBudget);  // NotAPartialMap

}  // namespace ufa
