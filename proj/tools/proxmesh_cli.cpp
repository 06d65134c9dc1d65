// proxmesh: generate sites, build meshes, query relations, run check suites
// and render SVG. Exit codes: 0 success / verdict true, 1 verdict false or
// failed suite, 2 error.

#include "proxmesh/error.hpp"
#include "proxmesh/harness.hpp"
#include "proxmesh/io.hpp"
#include "proxmesh/render.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <iostream>
#include <optional>

using namespace proxmesh;

namespace {

constexpr int kError = 2;

BBox parse_bbox(const std::string& text) {
    std::vector<Rational> v;
    std::size_t start = 0;
    while (true) {
        const auto comma = text.find(',', start);
        v.push_back(parse_rational(text.substr(start, comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (v.size() != 4) throw ParseError("--bbox expects x0,y0,x1,y1");
    BBox box{{v[0], v[1]}, {v[2], v[3]}};
    if (!(box.lo.x < box.hi.x && box.lo.y < box.hi.y)) throw DegenerateInputError("bbox has zero area");
    return box;
}

void emit(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-")
        std::cout << content;
    else
        write_file(path, content);
}

RelationReport evaluate(const std::string& name, const SubComplex& a, const SubComplex& b, const SubComplex* witness,
                        Proximity base) {
    if (name == "near") return near(a, b);
    if (name == "snear") return strongly_near(a, b);
    if (name == "far") return far(a, b);
    if (name == "sfar") return strongly_far(a, b, witness, base);
    if (name == "visible") return visible(a, b);
    if (name == "svisible") return strongly_visible(a, b);
    if (name == "invisible") return invisible(a, b);
    if (name == "sinvisible") return strongly_invisible(a, b);
    throw PreconditionError("unknown relation '" + name +
                            "' (expected near, snear, far, sfar, visible, svisible, invisible, sinvisible)");
}

std::string format_relation(const RelationReport& r, bool structured) {
    std::string witness;
    if (r.witness)
        witness = r.witness->describe();
    else if (r.witness_set)
        witness = r.witness_set->describe();
    if (structured) {
        nlohmann::json doc{{"relation", r.relation}, {"operands", r.operands}, {"verdict", r.verdict}};
        if (!witness.empty()) doc["witness"] = witness;
        if (!r.counterexample.empty()) doc["counterexample"] = r.counterexample;
        if (!r.note.empty()) doc["note"] = r.note;
        return doc.dump(2) + "\n";
    }
    std::string out = "relation " + r.relation + "\n";
    for (std::size_t i = 0; i < r.operands.size(); ++i)
        out += "operand " + std::string(1, static_cast<char>('A' + i)) + " " + r.operands[i] + "\n";
    out += std::string("verdict ") + (r.verdict ? "true" : "false") + "\n";
    if (!witness.empty()) out += "witness " + witness + "\n";
    if (!r.counterexample.empty()) out += "counterexample " + r.counterexample + "\n";
    if (!r.note.empty()) out += "note " + r.note + "\n";
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Delaunay meshes, Voronoi duals and proximity relations on mesh subcomplexes"};
    app.require_subcommand(1);

    RunConfig config;
    std::string bbox_text = "0,0,100,100";
    std::string margin_text = "0.1";
    std::string mode_text = "pairwise";
    std::string format = "text";
    std::string output;

    auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "text or structured")->check(CLI::IsMember({"text", "structured"}));
        cmd->add_option("-o,--output", output, "output path (default stdout)");
    };
    auto add_margin = [&](CLI::App* cmd) {
        cmd->add_option("--clip-margin", margin_text, "clip box margin as a fraction of the site extent");
    };

    auto* gen = app.add_subcommand("generate", "write a seeded random site set");
    gen->add_option("--seed", config.seed);
    gen->add_option("-n,--count", config.site_count, "number of sites");
    gen->add_option("--bbox", bbox_text, "x0,y0,x1,y1");
    gen->add_option("--lattice", config.lattice, "lattice steps per axis");
    gen->add_option("-o,--output", output);

    std::string sites_path;
    auto* tri = app.add_subcommand("triangulate", "Delaunay mesh of a sites file");
    tri->add_option("sites", sites_path)->required();
    add_margin(tri);
    tri->add_option("-o,--output", output);

    auto* vor = app.add_subcommand("voronoi", "mesh with its clipped Voronoi cells");
    vor->add_option("sites", sites_path)->required();
    add_margin(vor);
    vor->add_option("-o,--output", output);

    std::string mesh_path, a_path, b_path, relation, witness_path, base_text = "near";
    auto* rel = app.add_subcommand("relate", "evaluate a relation between two subcomplexes");
    rel->add_option("mesh", mesh_path)->required();
    rel->add_option("A", a_path)->required();
    rel->add_option("B", b_path)->required();
    rel->add_option("relation", relation)->required();
    rel->add_option("--witness", witness_path, "witness subcomplex for sfar");
    rel->add_option("--base", base_text, "near or visible (sfar only)")->check(CLI::IsMember({"near", "visible"}));
    add_format(rel);

    std::string suite_text = "all", constraints_path;
    auto* chk = app.add_subcommand("check", "run a check suite");
    chk->add_option("--suite", suite_text);
    chk->add_option("--mesh", mesh_path, "check a fixed mesh instead of generated ones");
    chk->add_option("--constraints", constraints_path, "constraint file for the segment-visibility checks");
    chk->add_option("--seed", config.seed);
    chk->add_option("--trials", config.trials);
    chk->add_option("-n,--count", config.site_count, "sites per generated mesh");
    chk->add_option("--bbox", bbox_text, "x0,y0,x1,y1");
    add_margin(chk);
    chk->add_option("--mode", mode_text, "region mode")->check(CLI::IsMember({"pairwise", "chain"}));
    add_format(chk);

    std::vector<std::string> highlight_paths;
    bool with_voronoi = false;
    auto* ren = app.add_subcommand("render", "SVG drawing of a mesh");
    ren->add_option("mesh", mesh_path)->required();
    ren->add_option("--subcomplex", highlight_paths, "subcomplex files to highlight");
    ren->add_flag("--voronoi", with_voronoi);
    ren->add_option("-o,--output", output)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kError;
    }

    try {
        config.bbox = parse_bbox(bbox_text);
        config.clip_margin = parse_rational(margin_text);
        config.mode = parse_region_mode(mode_text);
        config.structured = format == "structured";
        MeshOptions mesh_options;
        mesh_options.clip_margin = config.clip_margin;
        if (config.clip_margin <= 0) throw PreconditionError("clip margin must be > 0");

        if (*gen) {
            const GeneratedSites sites = generate_sites(config);
            emit(output, format_sites(sites.points, {"seed=" + std::to_string(config.seed) +
                                                     " n=" + std::to_string(config.site_count) + " bbox=" + bbox_text,
                                                     "resamples=" + std::to_string(sites.resamples)}));
            return 0;
        }
        if (*tri || *vor) {
            const SiteSet sites(parse_sites(read_file(sites_path)));
            emit(output, mesh_to_json(triangulate(sites, mesh_options), static_cast<bool>(*vor)));
            return 0;
        }
        if (*rel) {
            const Mesh mesh = mesh_from_json(read_file(mesh_path));
            const SubComplex a = subcomplex_from_json(mesh, read_file(a_path));
            const SubComplex b = subcomplex_from_json(mesh, read_file(b_path));
            std::optional<SubComplex> witness;
            if (!witness_path.empty()) witness = subcomplex_from_json(mesh, read_file(witness_path));
            const RelationReport r = evaluate(relation, a, b, witness ? &*witness : nullptr,
                                              base_text == "visible" ? Proximity::visible : Proximity::near);
            emit(output, format_relation(r, config.structured));
            return r.verdict ? 0 : 1;
        }
        if (*chk) {
            const Suite suite = parse_suite(suite_text);
            std::optional<Mesh> mesh;
            if (!mesh_path.empty()) mesh.emplace(mesh_from_json(read_file(mesh_path)));
            std::optional<ConstraintSet> constraints;
            if (!constraints_path.empty()) {
                if (!mesh) throw PreconditionError("--constraints needs --mesh");
                constraints = constraints_from_json(mesh->sites(), read_file(constraints_path));
            }
            const SuiteReport report =
                run_suite(suite, config, mesh ? &*mesh : nullptr, constraints ? &*constraints : nullptr);
            emit(output, format_report(report));
            return report.passed() ? 0 : 1;
        }
        if (*ren) {
            const std::string text = read_file(mesh_path);
            if (text.find_first_not_of(" \t\r\n") == std::string::npos) throw ParseError("mesh file " + mesh_path + " is empty");
            const Mesh mesh = mesh_from_json(text);
            RenderOptions options;
            options.voronoi = with_voronoi;
            for (const auto& path : highlight_paths) options.highlights.push_back(subcomplex_from_json(mesh, read_file(path)));
            write_file(output, render_svg(mesh, options));
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    }
    return kError;
}
