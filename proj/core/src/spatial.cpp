#include "hybridcsp/spatial.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "hybridcsp/errors.hpp"
#include "hybridcsp/random.hpp"

namespace hybridcsp {

std::string_view to_string(SpatialRelationKind kind) {
    switch (kind) {
        case SpatialRelationKind::adjacent:
            return "adjacent";
        case SpatialRelationKind::contains:
            return "contains";
        case SpatialRelationKind::within_distance:
            return "within-distance";
    }
    return "unknown";
}

void SpatialGraphSpec::validate() const {
    if (object_classes.empty()) {
        throw ConfigError("spatial spec needs at least one object class");
    }
    if (grid_size < 1) {
        throw ConfigError("grid_size must be positive");
    }
    for (const ObjectClass& c : object_classes) {
        if (c.region_count < 1) {
            throw ConfigError("object class '" + c.name + "' needs at least one region");
        }
        if (c.min_size < 1 || c.max_size < c.min_size || c.max_size > grid_size) {
            throw ConfigError("object class '" + c.name + "' has an invalid size range");
        }
    }
    for (const SpatialRelation& r : relations) {
        if (r.first >= object_classes.size() || r.second >= object_classes.size() || r.first == r.second) {
            throw ConfigError("spatial relation references invalid or identical classes");
        }
        if (r.kind == SpatialRelationKind::within_distance && !(r.distance > 0.0)) {
            throw ConfigError("within-distance relation needs a positive distance");
        }
    }
}

bool boxes_touch(const Box& a, const Box& b) {
    const bool closed = a.x0 <= b.x1 && b.x0 <= a.x1 && a.y0 <= b.y1 && b.y0 <= a.y1;
    const bool interiors = a.x0 < b.x1 && b.x0 < a.x1 && a.y0 < b.y1 && b.y0 < a.y1;
    return closed && !interiors;
}

bool box_contains(const Box& outer, const Box& inner) {
    return outer.x0 <= inner.x0 && inner.x1 <= outer.x1 && outer.y0 <= inner.y0 && inner.y1 <= outer.y1;
}

bool centers_within(const Box& a, const Box& b, double distance) {
    const double dx = 0.5 * (a.x0 + a.x1) - 0.5 * (b.x0 + b.x1);
    const double dy = 0.5 * (a.y0 + a.y1) - 0.5 * (b.y0 + b.y1);
    return std::sqrt(dx * dx + dy * dy) <= distance;
}

bool relation_holds(const SpatialRelation& relation, const Box& a, const Box& b) {
    switch (relation.kind) {
        case SpatialRelationKind::adjacent:
            return boxes_touch(a, b);
        case SpatialRelationKind::contains:
            return box_contains(a, b);
        case SpatialRelationKind::within_distance:
            return centers_within(a, b, relation.distance);
    }
    return false;
}

namespace {

int uniform_int(Rng& rng, int lo, int hi) {
    if (hi <= lo) {
        return lo;
    }
    return lo + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
}

class ScenePlacer {
public:
    ScenePlacer(const SpatialGraphSpec& spec, Rng& rng) : spec_(spec), rng_(rng) {}

    Box random_box(const ObjectClass& c) {
        const int w = uniform_int(rng_, c.min_size, c.max_size);
        const int h = uniform_int(rng_, c.min_size, c.max_size);
        const int x0 = uniform_int(rng_, 0, spec_.grid_size - w);
        const int y0 = uniform_int(rng_, 0, spec_.grid_size - h);
        return {x0, y0, x0 + w, y0 + h};
    }

    // A box of class `c` that satisfies `relation` against `anchor`, where
    // `c_is_first` says which side of the relation the new box is on.
    std::optional<Box> related_box(const ObjectClass& c, const SpatialRelation& relation, const Box& anchor,
                                   bool c_is_first) {
        switch (relation.kind) {
            case SpatialRelationKind::contains:
                return c_is_first ? surrounding(c, anchor) : inside(c, anchor);
            case SpatialRelationKind::adjacent:
                return beside(c, anchor);
            case SpatialRelationKind::within_distance:
                return near(c, anchor, relation.distance);
        }
        return std::nullopt;
    }

    bool in_grid(const Box& b) const {
        return b.x0 >= 0 && b.y0 >= 0 && b.x1 <= spec_.grid_size && b.y1 <= spec_.grid_size && b.x0 < b.x1 &&
               b.y0 < b.y1;
    }

private:
    std::optional<Box> inside(const ObjectClass& c, const Box& outer) {
        const int ow = outer.x1 - outer.x0;
        const int oh = outer.y1 - outer.y0;
        if (c.min_size > ow || c.min_size > oh) {
            return std::nullopt;
        }
        const int w = uniform_int(rng_, c.min_size, std::min(c.max_size, ow));
        const int h = uniform_int(rng_, c.min_size, std::min(c.max_size, oh));
        const int x0 = uniform_int(rng_, outer.x0, outer.x1 - w);
        const int y0 = uniform_int(rng_, outer.y0, outer.y1 - h);
        return Box{x0, y0, x0 + w, y0 + h};
    }

    std::optional<Box> surrounding(const ObjectClass& c, const Box& inner) {
        const int iw = inner.x1 - inner.x0;
        const int ih = inner.y1 - inner.y0;
        if (c.max_size < iw || c.max_size < ih) {
            return std::nullopt;
        }
        const int w = uniform_int(rng_, std::max(c.min_size, iw), c.max_size);
        const int h = uniform_int(rng_, std::max(c.min_size, ih), c.max_size);
        const int x0 = uniform_int(rng_, std::max(0, inner.x1 - w), std::min(inner.x0, spec_.grid_size - w));
        const int y0 = uniform_int(rng_, std::max(0, inner.y1 - h), std::min(inner.y0, spec_.grid_size - h));
        return Box{x0, y0, x0 + w, y0 + h};
    }

    std::optional<Box> beside(const ObjectClass& c, const Box& anchor) {
        const int w = uniform_int(rng_, c.min_size, c.max_size);
        const int h = uniform_int(rng_, c.min_size, c.max_size);
        Box b;
        switch (uniform_int(rng_, 0, 3)) {
            case 0:  // right
                b.x0 = anchor.x1;
                b.y0 = uniform_int(rng_, anchor.y0 - h + 1, anchor.y1 - 1);
                break;
            case 1:  // left
                b.x0 = anchor.x0 - w;
                b.y0 = uniform_int(rng_, anchor.y0 - h + 1, anchor.y1 - 1);
                break;
            case 2:  // above
                b.y0 = anchor.y1;
                b.x0 = uniform_int(rng_, anchor.x0 - w + 1, anchor.x1 - 1);
                break;
            default:  // below
                b.y0 = anchor.y0 - h;
                b.x0 = uniform_int(rng_, anchor.x0 - w + 1, anchor.x1 - 1);
                break;
        }
        b.x1 = b.x0 + w;
        b.y1 = b.y0 + h;
        return b;
    }

    std::optional<Box> near(const ObjectClass& c, const Box& anchor, double distance) {
        const int w = uniform_int(rng_, c.min_size, c.max_size);
        const int h = uniform_int(rng_, c.min_size, c.max_size);
        const double reach = distance / std::sqrt(2.0);
        const double cx = 0.5 * (anchor.x0 + anchor.x1) + rng_.uniform(-reach, reach);
        const double cy = 0.5 * (anchor.y0 + anchor.y1) + rng_.uniform(-reach, reach);
        const int x0 = static_cast<int>(std::lround(cx - 0.5 * w));
        const int y0 = static_cast<int>(std::lround(cy - 0.5 * h));
        return Box{x0, y0, x0 + w, y0 + h};
    }

    const SpatialGraphSpec& spec_;
    Rng& rng_;
};

// Relations between class c and any class placed before it.
bool consistent_with_placed(const SpatialGraphSpec& spec, std::size_t c, const Box& box,
                            const std::vector<std::optional<Box>>& placed) {
    for (const SpatialRelation& r : spec.relations) {
        if (r.first == c && placed[r.second] && !relation_holds(r, box, *placed[r.second])) {
            return false;
        }
        if (r.second == c && placed[r.first] && !relation_holds(r, *placed[r.first], box)) {
            return false;
        }
    }
    return true;
}

std::optional<std::vector<Box>> place_embedding(const SpatialGraphSpec& spec, ScenePlacer& placer,
                                                std::size_t attempts) {
    const std::size_t classes = spec.object_classes.size();
    std::vector<std::optional<Box>> placed(classes);
    for (std::size_t c = 0; c < classes; ++c) {
        const ObjectClass& cls = spec.object_classes[c];
        const SpatialRelation* anchor_relation = nullptr;
        for (const SpatialRelation& r : spec.relations) {
            if ((r.first == c && placed[r.second]) || (r.second == c && placed[r.first])) {
                anchor_relation = &r;
                break;
            }
        }
        bool done = false;
        for (std::size_t attempt = 0; attempt < attempts && !done; ++attempt) {
            std::optional<Box> box;
            if (anchor_relation == nullptr) {
                box = placer.random_box(cls);
            } else {
                const bool c_is_first = anchor_relation->first == c;
                const Box& anchor = *placed[c_is_first ? anchor_relation->second : anchor_relation->first];
                box = placer.related_box(cls, *anchor_relation, anchor, c_is_first);
            }
            if (box && placer.in_grid(*box) && consistent_with_placed(spec, c, *box, placed)) {
                placed[c] = *box;
                done = true;
            }
        }
        if (!done) {
            return std::nullopt;
        }
    }
    std::vector<Box> out;
    for (const auto& b : placed) {
        out.push_back(*b);
    }
    return out;
}

}  // namespace

SpatialInstance gen_spatial_graph(const SpatialGraphSpec& spec, std::uint64_t seed, std::size_t max_attempts) {
    spec.validate();
    Rng rng(seed);
    ScenePlacer placer(spec, rng);

    std::optional<std::vector<Box>> embedding;
    for (std::size_t restart = 0; restart < max_attempts && !embedding; ++restart) {
        embedding = place_embedding(spec, placer, max_attempts);
    }
    if (!embedding) {
        throw GenerationError("spatial spec '" + spec.name + "' could not be realized on a " +
                              std::to_string(spec.grid_size) + " grid");
    }

    const std::size_t classes = spec.object_classes.size();
    struct Draft {
        std::size_t object_class;
        Box box;
        bool planted;
    };
    std::vector<Draft> drafts;
    for (std::size_t c = 0; c < classes; ++c) {
        drafts.push_back({c, (*embedding)[c], true});
    }
    // Decoys: half are placed relative to an existing region of a related
    // class so that single relations are ambiguous, the rest uniformly.
    for (std::size_t c = 0; c < classes; ++c) {
        const ObjectClass& cls = spec.object_classes[c];
        std::vector<const SpatialRelation*> involving;
        for (const SpatialRelation& r : spec.relations) {
            if (r.first == c || r.second == c) {
                involving.push_back(&r);
            }
        }
        for (std::size_t k = 1; k < cls.region_count; ++k) {
            std::optional<Box> box;
            if (!involving.empty() && rng.uniform() < 0.5) {
                const SpatialRelation& r = *involving[rng.next_u64() % involving.size()];
                const bool c_is_first = r.first == c;
                const std::size_t other = c_is_first ? r.second : r.first;
                std::vector<Box> others;
                for (const Draft& d : drafts) {
                    if (d.object_class == other) {
                        others.push_back(d.box);
                    }
                }
                const Box& anchor = others[rng.next_u64() % others.size()];
                for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
                    std::optional<Box> candidate = placer.related_box(cls, r, anchor, c_is_first);
                    if (candidate && placer.in_grid(*candidate)) {
                        box = candidate;
                        break;
                    }
                }
            }
            drafts.push_back({c, box ? *box : placer.random_box(cls), false});
        }
    }

    // Fisher-Yates so region ids carry no information about the planted embedding.
    for (std::size_t i = drafts.size(); i > 1; --i) {
        std::swap(drafts[i - 1], drafts[rng.next_u64() % i]);
    }

    SpatialInstance out{ConstraintNetwork(Domains{Domain{0}}, {}), {}, Assignment(classes)};
    std::vector<std::vector<int>> domain_values(classes);
    for (std::size_t id = 0; id < drafts.size(); ++id) {
        const Draft& d = drafts[id];
        out.regions.push_back({static_cast<int>(id), d.object_class, d.box});
        domain_values[d.object_class].push_back(static_cast<int>(id));
        if (d.planted) {
            out.planted[d.object_class] = static_cast<int>(id);
        }
    }

    std::vector<Constraint> constraints;
    for (const SpatialRelation& r : spec.relations) {
        std::vector<ValuePair> tuples;
        for (int a : domain_values[r.first]) {
            for (int b : domain_values[r.second]) {
                if (relation_holds(r, out.regions[a].box, out.regions[b].box)) {
                    tuples.emplace_back(a, b);
                }
            }
        }
        constraints.push_back(Constraint::allowed_tuples(VariableId(r.first), VariableId(r.second), std::move(tuples)));
    }

    Domains domains;
    for (auto& values : domain_values) {
        domains.emplace_back(std::move(values));
    }
    InstanceMetadata meta{"spatial-graph",
                          seed,
                          {{"classes", std::to_string(classes)},
                           {"grid", std::to_string(spec.grid_size)},
                           {"regions", std::to_string(drafts.size())},
                           {"relations", std::to_string(spec.relations.size())},
                           {"spec", spec.name}}};
    out.network = ConstraintNetwork(std::move(domains), std::move(constraints),
                                    "spatial-" + spec.name + "-s" + std::to_string(seed), std::move(meta));
    if (evaluate(out.network, out.planted) != 0) {
        throw GenerationError("planted embedding violates the generated constraints");
    }
    return out;
}

std::size_t geometric_violations(const SpatialGraphSpec& spec, const std::vector<Region>& regions,
                                 const Assignment& embedding) {
    if (embedding.size() != spec.object_classes.size()) {
        throw InvalidAssignmentError("embedding does not cover every object class");
    }
    auto region = [&](std::size_t c) -> const Region& {
        const int id = embedding[c];
        if (id < 0 || static_cast<std::size_t>(id) >= regions.size() || regions[id].object_class != c) {
            throw InvalidAssignmentError("region " + std::to_string(id) + " is not of class " + std::to_string(c));
        }
        return regions[id];
    };
    std::size_t violated = 0;
    for (const SpatialRelation& r : spec.relations) {
        if (!relation_holds(r, region(r.first).box, region(r.second).box)) {
            ++violated;
        }
    }
    return violated;
}

SpatialGraphSpec airport_spec() {
    SpatialGraphSpec spec;
    spec.name = "airport";
    spec.grid_size = 120;
    spec.object_classes = {
        {"runway", 6, 20, 50},
        {"building", 6, 6, 16},
        {"airplane", 6, 2, 5},
        {"parking", 6, 10, 24},
    };
    constexpr std::size_t runway = 0, building = 1, airplane = 2, parking = 3;
    spec.relations = {
        {parking, airplane, SpatialRelationKind::contains, 0.0},
        {building, parking, SpatialRelationKind::adjacent, 0.0},
        {runway, parking, SpatialRelationKind::within_distance, 45.0},
        {runway, airplane, SpatialRelationKind::within_distance, 50.0},
        {building, runway, SpatialRelationKind::within_distance, 60.0},
    };
    return spec;
}

}  // namespace hybridcsp
