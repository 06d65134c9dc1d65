#pragma once

// Seeded site generation and the check suites behind `proxmesh check`.

#include "proxmesh/complexes.hpp"
#include "proxmesh/mesh.hpp"
#include "proxmesh/regions.hpp"
#include "proxmesh/visibility.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace proxmesh {

struct RunConfig {
    std::uint64_t seed = 1;
    int trials = 100;
    int site_count = 20;
    BBox bbox{{0, 0}, {100, 100}};
    // Generated coordinates lie on a lattice with this many steps per axis.
    long lattice = 10000;
    Rational clip_margin{1, 10};
    RegionMode mode = RegionMode::pairwise;
    bool structured = false;

    /// Throws PreconditionError or DegenerateInputError naming the bad field.
    void validate() const;
};

struct GeneratedSites {
    std::vector<Point2> points;
    // Points redrawn because they repeated an earlier one, plus whole-set
    // redraws of collinear outputs.
    int resamples = 0;
};

/// Deterministic for (seed, site_count, bbox, lattice).
GeneratedSites generate_sites(const RunConfig& config);

/// Sites and mesh used by trial `trial` of a generated run.
Mesh trial_mesh(const RunConfig& config, int trial);

enum class Suite { axioms, lemma31, lemma33, thm35, thm36, thm37, regions, leader, all };

const char* to_string(Suite suite);
/// Throws PreconditionError for unknown names.
Suite parse_suite(const std::string& name);

struct CheckRecord {
    std::string name;
    std::size_t checked = 0;
    std::size_t violations = 0;
    bool expected_divergence = false;
    std::string counterexample;
    std::string note;

    bool passed() const { return expected_divergence || violations == 0; }
};

struct SuiteReport {
    Suite suite = Suite::all;
    RunConfig config;
    std::vector<CheckRecord> records;
    // Operation name -> number of trials that exercised it.
    std::map<std::string, int> coverage;

    bool passed() const;
    const CheckRecord* find(const std::string& name) const;
};

/// Every operation the "all" suite must exercise in each trial.
const std::vector<std::string>& covered_operations();

/// Runs `config.trials` trials. Without a fixed mesh every trial builds its
/// own from trial_mesh(); without constraints the segment-visibility checks
/// draw random ones.
SuiteReport run_suite(Suite suite, const RunConfig& config, const Mesh* fixed_mesh = nullptr,
                      const ConstraintSet* constraints = nullptr);

std::string format_report(const SuiteReport& report);

/// Two triangles meeting in a single vertex: visible but not strongly
/// visible. Picks the lowest such pair.
std::optional<std::pair<int, int>> vertex_fan_pair(const Mesh& mesh);

} // namespace proxmesh
