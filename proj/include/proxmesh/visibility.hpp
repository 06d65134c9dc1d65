#pragma once

// Visibility between sites along straight segments, optionally obstructed by
// constraining segments whose endpoints are sites.

#include "proxmesh/complexes.hpp"
#include "proxmesh/mesh.hpp"

#include <cstdint>
#include <vector>

namespace proxmesh {

class ConstraintSet {
public:
    ConstraintSet() = default;
    /// Throws PreconditionError for out-of-range or degenerate pairs.
    ConstraintSet(const SiteSet& sites, std::vector<Edge> segments);

    /// Normalized (first < second), deduplicated, ascending.
    const std::vector<Edge>& segments() const { return segments_; }
    bool contains(int p, int q) const;
    bool empty() const { return segments_.empty(); }
    ConstraintSet without(int p, int q) const;

private:
    std::vector<Edge> segments_;
};

/// No third site lies strictly between p and q. Throws PreconditionError when
/// p == q or either point is not a site.
bool collinear_visible(const Point2& p, const Point2& q, const SiteSet& sites);

/// No site other than p, q in the open segment pq, and pq shares no interior
/// point with any constraint other than pq itself. Endpoint contact with a
/// constraint does not obstruct.
bool segment_visible(int p, int q, const SiteSet& sites, const ConstraintSet& constraints);

/// Re-derives both conclusions for visible pairs by an independent route
/// (exact parametric solves). Pairs are enumerated exhaustively when trials
/// covers every pair, otherwise `trials` pairs are drawn from trial_rng(seed, i).
/// Reports: interior-site conclusion, constraint conclusion, and the count of
/// visible pairs that touch a constraint at an endpoint (where the literal
/// empty-intersection reading would disagree).
std::vector<RelationReport> check_theorem_segment_visibility(const SiteSet& sites, const ConstraintSet& constraints,
                                                             int trials, std::uint64_t seed);

} // namespace proxmesh
