#ifndef HYBRIDCSP_SPATIAL_HPP
#define HYBRIDCSP_SPATIAL_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hybridcsp/csp.hpp"

namespace hybridcsp {

// Synthetic scene-matching instances: a model graph of object classes and
// spatial relations is matched against a random scene of axis-aligned
// regions. Relations are realized as extensional constraints, so the solvers
// never see geometry.

enum class SpatialRelationKind {
    adjacent,         ///< boxes touch without overlapping interiors
    contains,         ///< the first box contains the second
    within_distance,  ///< box centers at most `distance` apart
};

std::string_view to_string(SpatialRelationKind kind);

struct ObjectClass {
    std::string name;
    std::size_t region_count = 1;
    /// Side lengths of generated regions, in grid cells.
    int min_size = 4;
    int max_size = 12;
};

struct SpatialRelation {
    std::size_t first = 0;   ///< index into object_classes
    std::size_t second = 0;  ///< index into object_classes
    SpatialRelationKind kind = SpatialRelationKind::adjacent;
    double distance = 0.0;  ///< only for within_distance
};

struct SpatialGraphSpec {
    std::string name = "scene";
    std::vector<ObjectClass> object_classes;
    std::vector<SpatialRelation> relations;
    int grid_size = 100;

    /// Throws ConfigError on an invalid spec.
    void validate() const;
};

/// Half-open box [x0, x1) x [y0, y1) in grid cells.
struct Box {
    int x0 = 0;
    int y0 = 0;
    int x1 = 1;
    int y1 = 1;

    friend bool operator==(const Box&, const Box&) = default;
};

bool boxes_touch(const Box& a, const Box& b);
bool box_contains(const Box& outer, const Box& inner);
bool centers_within(const Box& a, const Box& b, double distance);
/// Whether `relation` holds for a region of its first class at `a` and a
/// region of its second class at `b`.
bool relation_holds(const SpatialRelation& relation, const Box& a, const Box& b);

struct Region {
    int id = 0;
    std::size_t object_class = 0;
    Box box;
};

struct SpatialInstance {
    ConstraintNetwork network;
    /// Indexed by region id.
    std::vector<Region> regions;
    /// Region id per object class of the embedding placed by the generator.
    Assignment planted;
};

/// Variables are the object classes, domains the ids of each class's
/// regions. At least one embedding (the planted one) satisfies the spec.
/// Throws GenerationError when the spec cannot be realized within
/// max_attempts placements.
SpatialInstance gen_spatial_graph(const SpatialGraphSpec& spec, std::uint64_t seed, std::size_t max_attempts = 200);

/// Number of spec relations violated by an embedding, recomputed from the
/// region geometry rather than the constraint network.
std::size_t geometric_violations(const SpatialGraphSpec& spec, const std::vector<Region>& regions,
                                 const Assignment& embedding);

/// Airport-like model: runway, building, airplane and parking areas with
/// five relations, six regions per class.
SpatialGraphSpec airport_spec();

}  // namespace hybridcsp

#endif  // HYBRIDCSP_SPATIAL_HPP
