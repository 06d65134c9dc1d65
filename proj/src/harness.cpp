#include "proxmesh/harness.hpp"

#include "proxmesh/error.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace proxmesh {

namespace {

const char* const kSuiteNames[] = {"axioms", "lemma31", "lemma33", "thm35", "thm36", "thm37", "regions", "leader", "all"};

class Recorder {
public:
    explicit Recorder(std::string prefix) : prefix_(std::move(prefix)) {}

    void set_prefix(std::string prefix) { prefix_ = std::move(prefix); }

    CheckRecord& at(const std::string& name, bool expected = false) {
        const std::string full = name.rfind(prefix_ + ".", 0) == 0 ? name : prefix_ + "." + name;
        auto [it, fresh] = index_.emplace(full, records_.size());
        if (fresh) {
            records_.push_back({});
            records_.back().name = full;
            records_.back().expected_divergence = expected;
        }
        return records_[it->second];
    }

    void count(const std::string& name, bool ok, const std::function<std::string()>& describe,
               bool expected = false) {
        CheckRecord& r = at(name, expected);
        ++r.checked;
        if (!ok && r.violations++ == 0) r.counterexample = describe();
    }

    void merge(const RelationReport& rep, const std::string& context) {
        CheckRecord& r = at(rep.relation, rep.expected_divergence);
        r.checked += rep.checked;
        r.violations += rep.violations;
        if (rep.violations > 0 && r.counterexample.empty()) r.counterexample = context + " " + rep.counterexample;
        if (r.note.empty()) r.note = rep.note;
    }

    std::vector<CheckRecord> take() { return std::move(records_); }

private:
    std::string prefix_;
    std::vector<CheckRecord> records_;
    std::map<std::string, std::size_t> index_;
};

struct Trial {
    const Mesh& mesh;
    Rng& rng;
    std::string tag;  // reproduction data
    const ConstraintSet* constraints;
    std::set<std::string> touched;
};

int draw(Rng& rng, std::size_t n) { return static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n))); }

std::string pair_note(const Trial& t, const SubComplex& a, const SubComplex& b) {
    return t.tag + " A=" + a.describe() + " B=" + b.describe();
}

std::set<int> random_region_triangles(const Mesh& mesh, RegionMode mode, Rng& rng, int max_size) {
    const int start = draw(rng, mesh.triangles().size());
    std::set<int> region{start};
    if (mode == RegionMode::pairwise) {
        const auto next = mesh.edge_adjacent(start);
        if (next.empty() || one_in(rng, 4)) return region;
        const int second = next[static_cast<std::size_t>(draw(rng, next.size()))];
        region.insert(second);
        // A third triangle only fits around a degree-3 vertex.
        std::vector<int> third;
        for (int u : mesh.edge_adjacent(second)) {
            const auto around = mesh.edge_adjacent(start);
            if (u != start && std::find(around.begin(), around.end(), u) != around.end()) third.push_back(u);
        }
        if (!third.empty() && one_in(rng, 2)) region.insert(third[static_cast<std::size_t>(draw(rng, third.size()))]);
        return region;
    }
    const int target = 1 + draw(rng, static_cast<std::size_t>(max_size));
    while (static_cast<int>(region.size()) < target) {
        std::set<int> frontier;
        for (int t : region)
            for (int u : mesh.edge_adjacent(t))
                if (!region.count(u)) frontier.insert(u);
        if (frontier.empty()) break;
        region.insert(*std::next(frontier.begin(), draw(rng, frontier.size())));
    }
    return region;
}

std::string triangles_text(const std::set<int>& tris) {
    std::string out;
    for (int t : tris) out += (out.empty() ? "" : ",") + std::to_string(t);
    return "{" + out + "}";
}

void run_axioms(Trial& t, Recorder& rec) {
    for (Proximity rel : {Proximity::visible, Proximity::near})
        for (const auto& r : check_cech_axioms(t.mesh, rel, 1, t.rng())) rec.merge(r, t.tag);
    t.touched.insert("check_cech_axioms");
}

void run_lemma31(Trial& t, Recorder& rec) {
    const SubComplex a = random_subcomplex(t.mesh, t.rng);
    const SubComplex b = random_subcomplex(t.mesh, t.rng);
    // Lower-dimensional operands too: a random vertex and a random edge.
    const int v = draw(t.rng, t.mesh.sites().size());
    const auto edge = std::next(t.mesh.edges().begin(), draw(t.rng, t.mesh.edges().size()))->first;
    const SubComplex vertex = SubComplex::from_simplex(t.mesh, Simplex::vertex(v));
    const SubComplex segment = SubComplex::from_simplex(t.mesh, Simplex::edge(edge));

    for (const auto& [x, y] : {std::pair{&a, &b}, std::pair{&vertex, &b}, std::pair{&segment, &a}}) {
        const bool n = near(*x, *y).verdict;
        const bool vis = visible(*x, *y).verdict;
        const auto where = [&] { return pair_note(t, *x, *y); };
        rec.count("near_iff_visible", n == vis, where);
        rec.count("far_is_not_near", far(*x, *y).verdict == !n, where);
        rec.count("invisible_is_not_visible", invisible(*x, *y).verdict == !vis, where);
        rec.count("sinvisible_equals_invisible", strongly_invisible(*x, *y).verdict == invisible(*x, *y).verdict, where);
    }
    rec.at("sinvisible_equals_invisible").note = "strong invisibility collapses to invisibility on finite complexes";
    t.touched.insert({"near", "far", "visible", "invisible", "strongly_invisible"});
}

void run_lemma33(Trial& t, Recorder& rec) {
    const SubComplex a = random_subcomplex(t.mesh, t.rng);
    const SubComplex b = random_subcomplex(t.mesh, t.rng);
    const auto where = [&] { return pair_note(t, a, b); };
    const bool vis = visible(a, b).verdict;
    const bool svis = strongly_visible(a, b).verdict;
    rec.count("forward", !svis || vis, where);
    rec.count("snear_implies_near", !strongly_near(a, b).verdict || near(a, b).verdict, where);
    rec.count("converse", svis || !vis, where, true);

    // Vertex fans always separate the two relations when the mesh has one.
    if (auto fan = vertex_fan_pair(t.mesh)) {
        const SubComplex x = SubComplex::from_triangles(t.mesh, {fan->first});
        const SubComplex y = SubComplex::from_triangles(t.mesh, {fan->second});
        const bool diverges = visible(x, y).verdict && !strongly_visible(x, y).verdict;
        rec.count("converse", !diverges, [&] { return pair_note(t, x, y); }, true);
    }
    rec.at("converse", true).note = "visible pairs sharing no edge: the two-way claim fails on vertex fans";
    t.touched.insert({"visible", "strongly_visible", "strongly_near", "near"});
}

void run_thm35(Trial& t, Recorder& rec) {
    const Mesh& mesh = t.mesh;
    // C: a triangle away from the hull when one exists; B: its vertex star.
    std::vector<int> inner;
    for (int i = 0; i < static_cast<int>(mesh.triangles().size()); ++i) {
        const auto& v = mesh.triangle(i).v;
        if (!mesh.is_hull_vertex(v[0]) && !mesh.is_hull_vertex(v[1]) && !mesh.is_hull_vertex(v[2])) inner.push_back(i);
    }
    const int c_tri = inner.empty() ? draw(t.rng, mesh.triangles().size())
                                    : inner[static_cast<std::size_t>(draw(t.rng, inner.size()))];
    const SubComplex c = closure(SubComplex::from_triangles(mesh, {c_tri}));
    const SubComplex b = vertex_neighborhood(c, 1);

    const std::set<int> b_support = closure(b).vertices();
    std::set<int> a_tris;
    for (int i = 0; i < static_cast<int>(mesh.triangles().size()); ++i) {
        const auto& v = mesh.triangle(i).v;
        const bool touches = std::any_of(v.begin(), v.end(), [&](int x) { return b_support.count(x) > 0; });
        if (!touches && one_in(t.rng, 2)) a_tris.insert(i);
    }
    const SubComplex a = closure(SubComplex::from_triangles(mesh, a_tris));
    const SubComplex random_a = random_subcomplex(mesh, t.rng);

    for (const SubComplex* operand : {&a, &random_a}) {
        const auto where = [&] { return pair_note(t, *operand, c) + " W=" + b.describe(); };
        const RelationReport with_near = strongly_far(*operand, c, &b, Proximity::near);
        const RelationReport with_visible = strongly_far(*operand, c, &b, Proximity::visible);
        const RelationReport searched = strongly_far(*operand, c);
        const RelationReport searched_v = strongly_far(*operand, c, nullptr, Proximity::visible);

        const bool direct = !operand->empty() && !c.empty() && far(*operand, b).verdict &&
                            closure(c).subset_of(interior(closure(b)));
        rec.count("reevaluation_matches", direct == with_near.verdict, where);
        rec.count("sfar_v_equals_sfar_delta",
                  with_near.verdict == with_visible.verdict && searched.verdict == searched_v.verdict, where);
        for (const RelationReport* r : {&with_near, &searched})
            if (r->verdict) rec.count("sfar_implies_invisible", invisible(*operand, c).verdict, where);
    }
    rec.at("sfar_implies_invisible");
    t.touched.insert({"strongly_far", "far", "invisible"});
}

void run_thm36(Trial& t, Recorder& rec) {
    for (const auto& r : check_delaunay_equivalences(t.mesh)) {
        rec.count("items_agree", r.verdict, [&] { return t.tag + " " + r.counterexample + " " + r.note; });
        const int tri = std::stoi(r.operands.front().substr(1));
        rec.count("triangle_convex", is_convex_polygon(t.mesh.triangle_polygon(tri)), [&] { return t.tag; });
    }
    t.touched.insert("check_delaunay_equivalences");
}

void run_thm37(Trial& t, Recorder& rec) {
    const SiteSet& sites = t.mesh.sites();
    const int n = static_cast<int>(sites.size());
    ConstraintSet constraints;
    if (t.constraints) {
        constraints = *t.constraints;
    } else {
        std::vector<Edge> picked;
        for (int k = 0; k < std::max(1, n / 4); ++k) {
            const int p = draw(t.rng, sites.size());
            int q = draw(t.rng, sites.size() - 1);
            if (q >= p) ++q;
            picked.emplace_back(p, q);
        }
        constraints = ConstraintSet(sites, std::move(picked));
    }
    const int pairs = n * (n - 1) / 2;
    const std::uint64_t seed = t.rng();
    for (const auto& r : check_theorem_segment_visibility(sites, constraints, pairs, seed)) rec.merge(r, t.tag);

    const int p = draw(t.rng, sites.size());
    int q = draw(t.rng, sites.size() - 1);
    if (q >= p) ++q;
    const auto where = [&] { return t.tag + " pair " + std::to_string(p) + "-" + std::to_string(q); };
    const bool vis = segment_visible(p, q, sites, constraints);
    rec.count("symmetric", vis == segment_visible(q, p, sites, constraints), where);
    if (!constraints.empty()) {
        const Edge drop = constraints.segments()[static_cast<std::size_t>(draw(t.rng, constraints.segments().size()))];
        rec.count("removal_monotone", !vis || segment_visible(p, q, sites, constraints.without(drop.first, drop.second)),
                  where);
    }
    t.touched.insert({"segment_visible", "check_theorem_segment_visibility"});
}

void run_regions(Trial& t, Recorder& rec, RegionMode mode) {
    const Region r1 = build_region(t.mesh, random_region_triangles(t.mesh, mode, t.rng, 6), mode);
    const Region r2 = build_region(t.mesh, random_region_triangles(t.mesh, mode, t.rng, 6), mode);
    const auto where = [&] { return t.tag + " region=" + triangles_text(r1.triangles()); };

    bool mode_ok = true;
    if (mode == RegionMode::pairwise)
        for (int x : r1.triangles())
            for (int y : r1.triangles()) {
                if (x == y) continue;
                const auto adj = t.mesh.edge_adjacent(x);
                mode_ok = mode_ok && std::find(adj.begin(), adj.end(), y) != adj.end();
            }
    rec.count("mode_invariant", mode_ok, where);

    try {
        const ConvexityReport conv = region_convexity(r1);
        rec.count("union_convex", conv.is_convex, [&] { return where() + " outline=" + to_string(conv.union_polygon); },
                  true);
    } catch (const RegionTopologyError& e) {
        CheckRecord& skipped = rec.at("topology_rejected");
        ++skipped.checked;
        skipped.note = "regions with holes or pinches have no single outline";
    }

    // Edge-adjacent pairs whose union is a reflex quadrilateral.
    for (const auto& [edge, tris] : t.mesh.edges()) {
        if (tris.size() != 2) continue;
        const Region pair = build_region(t.mesh, {tris[0], tris[1]}, RegionMode::pairwise);
        const ConvexityReport conv = region_convexity(pair);
        if (!conv.is_convex) {
            rec.count("reflex_edge_pair", false, [&] {
                return t.tag + " triangles=" + triangles_text(pair.triangles()) + " outline=" +
                       to_string(conv.union_polygon);
            }, true);
            break;
        }
    }
    rec.at("union_convex", true).note = "non-convex unions are counterexamples to the unqualified convexity claim";
    rec.at("reflex_edge_pair", true).note = "first reflex edge-adjacent pair per mesh";

    const bool proximal = regions_proximal(r1, r2).verdict;
    rec.count("proximal_matches_near", proximal == near(r1.complex(), r2.complex()).verdict,
              [&] { return where() + " other=" + triangles_text(r2.triangles()); });
    rec.count("proximal_symmetric", proximal == regions_proximal(r2, r1).verdict, where);
    t.touched.insert({"build_region", "region_convexity", "regions_proximal"});
}

void run_leader(Trial& t, Recorder& rec, RegionMode mode) {
    const Region region = build_region(t.mesh, random_region_triangles(t.mesh, mode, t.rng, 6), mode);
    const SubComplex whole = region.complex();
    std::vector<SubComplex> family;
    const int members = 2 + draw(t.rng, 5);
    for (int k = 0; k < members; ++k) {
        switch (draw(t.rng, 4)) {
        case 0:
            family.emplace_back(t.mesh);
            break;
        case 1: {
            const auto v = std::next(whole.vertices().begin(), draw(t.rng, whole.vertices().size()));
            family.push_back(SubComplex::from_simplex(t.mesh, Simplex::vertex(*v)));
            break;
        }
        default: {
            std::set<int> tris;
            for (int x : region.triangles())
                if (one_in(t.rng, 2)) tris.insert(x);
            family.push_back(closure(SubComplex::from_triangles(t.mesh, tris)));
        }
        }
    }
    const NeighborhoodMap by_visible = leader_topology(region, family, Proximity::visible);
    const NeighborhoodMap by_near = leader_topology(region, family, Proximity::near);
    const auto where = [&] { return t.tag + " region=" + triangles_text(region.triangles()); };
    const auto bad = by_visible.invariant_violations();
    rec.count("invariants", bad.empty() && by_near.invariant_violations().empty(),
              [&] { return where() + (bad.empty() ? std::string() : " " + bad.front()); });
    rec.count("visible_equals_near", by_visible.near_sets == by_near.near_sets, where);
    t.touched.insert("leader_topology");
}

} // namespace

void RunConfig::validate() const {
    if (trials < 1) throw PreconditionError("trials must be >= 1");
    if (site_count < 3) throw PreconditionError("site count must be >= 3");
    if (clip_margin <= 0) throw PreconditionError("clip margin must be > 0");
    if (lattice < 1) throw PreconditionError("lattice resolution must be >= 1");
    if (!(bbox.lo.x < bbox.hi.x && bbox.lo.y < bbox.hi.y)) throw DegenerateInputError("bbox has zero area");
}

GeneratedSites generate_sites(const RunConfig& config) {
    config.validate();
    const mpz_class lattice_points = mpz_class(config.lattice + 1) * (config.lattice + 1);
    if (lattice_points < config.site_count)
        throw PreconditionError("cannot place " + std::to_string(config.site_count) + " distinct sites on the lattice");

    Rng rng = trial_rng(config.seed, 0);
    const auto steps = static_cast<std::uint64_t>(config.lattice) + 1;
    const Rational dx = (config.bbox.hi.x - config.bbox.lo.x) / config.lattice;
    const Rational dy = (config.bbox.hi.y - config.bbox.lo.y) / config.lattice;
    auto next_point = [&] {
        const auto i = static_cast<long>(uniform_below(rng, steps));
        const auto j = static_cast<long>(uniform_below(rng, steps));
        return Point2{config.bbox.lo.x + dx * i, config.bbox.lo.y + dy * j};
    };

    GeneratedSites out;
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::set<Point2> seen;
        out.points.clear();
        while (static_cast<int>(out.points.size()) < config.site_count) {
            Point2 p = next_point();
            if (!seen.insert(p).second) {
                ++out.resamples;
                continue;
            }
            out.points.push_back(std::move(p));
        }
        const auto& pts = out.points;
        const bool collinear = std::all_of(pts.begin() + 2, pts.end(),
                                           [&](const Point2& p) { return orient2d(pts[0], pts[1], p) == 0; });
        if (!collinear) return out;
        ++out.resamples;
    }
    throw DegenerateInputError("could not draw a non-collinear site set");
}

Mesh trial_mesh(const RunConfig& config, int trial) {
    Rng rng = trial_rng(config.seed, static_cast<std::uint64_t>(trial));
    RunConfig sub = config;
    sub.seed = rng();
    MeshOptions options;
    options.clip_margin = config.clip_margin;
    return triangulate(SiteSet(generate_sites(sub).points), options);
}

const char* to_string(Suite suite) { return kSuiteNames[static_cast<int>(suite)]; }

Suite parse_suite(const std::string& name) {
    for (int i = 0; i <= static_cast<int>(Suite::all); ++i)
        if (name == kSuiteNames[i]) return static_cast<Suite>(i);
    throw PreconditionError("unknown suite '" + name + "'");
}

bool SuiteReport::passed() const {
    return std::all_of(records.begin(), records.end(), [](const CheckRecord& r) { return r.passed(); });
}

const CheckRecord* SuiteReport::find(const std::string& name) const {
    for (const auto& r : records)
        if (r.name == name) return &r;
    return nullptr;
}

const std::vector<std::string>& covered_operations() {
    static const std::vector<std::string> ops{
        "near",          "strongly_near",      "far",
        "strongly_far",  "visible",            "strongly_visible",
        "invisible",     "strongly_invisible", "check_cech_axioms",
        "check_delaunay_equivalences", "segment_visible", "check_theorem_segment_visibility",
        "build_region",  "region_convexity",   "regions_proximal",
        "leader_topology"};
    return ops;
}

SuiteReport run_suite(Suite suite, const RunConfig& config, const Mesh* fixed_mesh, const ConstraintSet* constraints) {
    config.validate();
    SuiteReport report;
    report.suite = suite;
    report.config = config;
    Recorder rec(to_string(suite));

    std::vector<Suite> parts;
    if (suite == Suite::all)
        for (int i = 0; i < static_cast<int>(Suite::all); ++i) parts.push_back(static_cast<Suite>(i));
    else
        parts.push_back(suite);

    for (int trial = 0; trial < config.trials; ++trial) {
        Rng rng = trial_rng(config.seed, static_cast<std::uint64_t>(trial));
        const std::uint64_t site_seed = rng();
        std::optional<Mesh> generated;
        if (!fixed_mesh) generated.emplace(trial_mesh(config, trial));
        const Mesh& mesh = fixed_mesh ? *fixed_mesh : *generated;
        std::ostringstream tag;
        tag << "seed=" << config.seed << " trial=" << trial;
        if (fixed_mesh)
            tag << " mesh=" << mesh.id();
        else
            tag << " site_seed=" << site_seed;
        Trial t{mesh, rng, tag.str(), constraints, {}};

        for (Suite part : parts) {
            rec.set_prefix(to_string(part));
            switch (part) {
            case Suite::axioms: run_axioms(t, rec); break;
            case Suite::lemma31: run_lemma31(t, rec); break;
            case Suite::lemma33: run_lemma33(t, rec); break;
            case Suite::thm35: run_thm35(t, rec); break;
            case Suite::thm36: run_thm36(t, rec); break;
            case Suite::thm37: run_thm37(t, rec); break;
            case Suite::regions: run_regions(t, rec, config.mode); break;
            case Suite::leader: run_leader(t, rec, config.mode); break;
            case Suite::all: break;
            }
        }
        for (const auto& op : t.touched) ++report.coverage[op];
    }
    report.records = rec.take();
    return report;
}

std::string format_report(const SuiteReport& report) {
    const RunConfig& c = report.config;
    auto status = [](const CheckRecord& r) {
        if (r.violations == 0) return "PASS";
        return r.expected_divergence ? "EXPECTED" : "FAIL";
    };
    // Per-suite tallies keyed by the record name prefix.
    std::map<std::string, std::array<int, 3>> tally;
    for (const auto& r : report.records) {
        auto& counts = tally[r.name.substr(0, r.name.find('.'))];
        ++counts[r.violations == 0 ? 0 : r.expected_divergence ? 2 : 1];
    }

    if (c.structured) {
        nlohmann::json doc;
        doc["suite"] = to_string(report.suite);
        doc["seed"] = c.seed;
        doc["trials"] = c.trials;
        doc["sites"] = c.site_count;
        doc["mode"] = to_string(c.mode);
        nlohmann::json records = nlohmann::json::array();
        for (const auto& r : report.records)
            records.push_back({{"name", r.name},
                               {"checked", r.checked},
                               {"violations", r.violations},
                               {"status", status(r)},
                               {"expected_divergence", r.expected_divergence},
                               {"counterexample", r.counterexample},
                               {"note", r.note}});
        doc["records"] = std::move(records);
        nlohmann::json suites = nlohmann::json::object();
        for (const auto& [name, counts] : tally)
            suites[name] = {{"pass", counts[0]}, {"fail", counts[1]}, {"expected", counts[2]}};
        doc["suites"] = std::move(suites);
        doc["coverage"] = report.coverage;
        doc["result"] = report.passed() ? "PASS" : "FAIL";
        return doc.dump(2) + "\n";
    }

    std::ostringstream out;
    out << "suite " << to_string(report.suite) << " seed=" << c.seed << " trials=" << c.trials
        << " sites=" << c.site_count << " mode=" << to_string(c.mode) << "\n";
    for (const auto& r : report.records) {
        out << "check " << r.name << " checked=" << r.checked << " violations=" << r.violations
            << " status=" << status(r) << "\n";
        if (!r.counterexample.empty()) out << "  counterexample " << r.counterexample << "\n";
        if (!r.note.empty()) out << "  note " << r.note << "\n";
    }
    for (const auto& [op, trials] : report.coverage) out << "coverage " << op << " trials=" << trials << "\n";
    for (const auto& [name, counts] : tally)
        out << "summary " << name << " pass=" << counts[0] << " fail=" << counts[1] << " expected=" << counts[2] << "\n";
    out << "result " << (report.passed() ? "PASS" : "FAIL") << "\n";
    return out.str();
}

std::optional<std::pair<int, int>> vertex_fan_pair(const Mesh& mesh) {
    for (int t = 0; t < static_cast<int>(mesh.triangles().size()); ++t)
        for (int u : mesh.vertex_adjacent(t)) {
            if (u <= t) continue;
            int common = 0;
            for (int v : mesh.triangle(t).v) common += mesh.triangle(u).has_vertex(v) ? 1 : 0;
            if (common == 1) return std::pair{t, u};
        }
    return std::nullopt;
}

} // namespace proxmesh
