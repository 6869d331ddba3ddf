// Batch front-end: rays / puzzle / tableau / nest / modulus subcommands
// producing deterministic JSON/CSV/SVG reports.
//
// Exit codes: 0 success; 1 usage; 2 computation failure; 3 a verified
// inequality of the accounting is violated (the alarm output).

#include "dualnest/modulus.hpp"
#include "dualnest/nest.hpp"
#include "dualnest/report_io.hpp"
#include "dualnest/tableau.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace dualnest;

namespace {

struct RunConfig {
    double c_re = 0.0;
    double c_im = 0.0;
    std::string limb;    // "P/Q"
    std::string angles;  // comma-separated
    int depth = 6;
    double r0 = 1.0;
    int grid = 512;
    double tol = 1e-9;
    std::string mode = "synthetic";
    std::string spec_file;
    int batches = 3;
    std::string out = ".";
    int threads = 1;
    long long seed = 1;
    std::string region_file;
};

[[noreturn]] void computation_failure(const std::string& stage,
                                      const std::string& what) {
    std::cerr << "error in " << stage << ": " << what << "\n";
    std::exit(2);
}

Json config_echo(const RunConfig& cfg) {
    Json j = Json::object();
    j["c_re"] = cfg.c_re;
    j["c_im"] = cfg.c_im;
    if (!cfg.limb.empty()) j["limb"] = cfg.limb;
    if (!cfg.angles.empty()) j["angles"] = cfg.angles;
    j["depth"] = cfg.depth;
    j["r0"] = cfg.r0;
    j["grid"] = cfg.grid;
    j["tol"] = cfg.tol;
    j["mode"] = cfg.mode;
    if (!cfg.spec_file.empty()) j["spec"] = cfg.spec_file;
    if (!cfg.region_file.empty()) j["region"] = cfg.region_file;
    j["batches"] = cfg.batches;
    j["threads"] = cfg.threads;
    j["seed"] = cfg.seed;
    return j;
}

Limb parse_limb(const std::string& text) {
    const auto slash = text.find('/');
    if (slash == std::string::npos) {
        throw std::invalid_argument("limb must be P/Q");
    }
    Limb limb;
    limb.p = std::stol(text.substr(0, slash));
    limb.q = std::stol(text.substr(slash + 1));
    return limb;
}

Parameter make_param(const RunConfig& cfg) {
    Parameter param{Complex(cfg.c_re, cfg.c_im)};
    if (!cfg.limb.empty()) param.limb = parse_limb(cfg.limb);
    return param;
}

// Angles to trace: the explicit list when given, otherwise the alpha cycle
// of the limb. Throws std::invalid_argument on malformed input (usage).
std::vector<Angle> requested_angles(const RunConfig& cfg) {
    std::vector<Angle> out;
    if (!cfg.angles.empty()) {
        std::stringstream ss(cfg.angles);
        std::string item;
        while (std::getline(ss, item, ',')) out.push_back(Angle::parse(item));
        return out;
    }
    if (cfg.limb.empty()) {
        throw std::invalid_argument("need --angles or --limb");
    }
    const Limb limb = parse_limb(cfg.limb);
    return alpha_cycle(limb.p, limb.q).angles;
}

void write_report(const RunConfig& cfg, const std::string& name,
                  const std::string& content) {
    fs::create_directories(cfg.out);
    write_text_file((fs::path(cfg.out) / name).string(), content);
}

std::string rational_str(const Rational& r) { return r.str(); }

// ---------------------------------------------------------------------------

int cmd_rays(const RunConfig& cfg) {
    std::vector<Angle> angles;
    try {
        angles = requested_angles(cfg);
    } catch (const std::exception& e) {
        std::cerr << "usage: " << e.what() << "\n";
        return 1;
    }
    const Parameter param = make_param(cfg);

    Json rays_out = Json::object();
    rays_out["meta"] = meta_block(config_echo(cfg));
    Json ray_list = Json::array();
    std::vector<Polyline> figure;
    for (const Angle& a : angles) {
        ExternalRay ray;
        try {
            ray = trace_ray(param, a, cfg.r0, 1e-7);
        } catch (const TraceDiverged& e) {
            computation_failure("ray " + a.str(), e.what());
        }
        Json r = Json::object();
        r["angle"] = a.str();
        bool landed = false;
        Complex landing;
        try {
            landing = landing_point(ray, param);
            landed = true;
        } catch (const NotLanded&) {
        }
        r["landed"] = landed;
        if (landed) r["landing"] = complex_json(landing);
        r["potentials"] = [&] {
            Json p = Json::array();
            for (double t : ray.potentials) p.push_back(t);
            return p;
        }();
        r["samples"] = polyline_json(ray.samples);
        ray_list.push_back(std::move(r));
        figure.push_back(ray.samples);
    }
    rays_out["rays"] = std::move(ray_list);

    Json equi_out = Json::object();
    equi_out["meta"] = meta_block(config_echo(cfg));
    Json levels = Json::array();
    for (double level : {cfg.r0, cfg.r0 / 2.0}) {
        Equipotential eq;
        try {
            eq = trace_equipotential(param, level, 256);
        } catch (const TraceDiverged& e) {
            computation_failure("equipotential " + std::to_string(level),
                                e.what());
        }
        Json l = Json::object();
        l["level"] = eq.level;
        l["samples"] = polyline_json(eq.samples);
        levels.push_back(std::move(l));
        Polyline closed = eq.samples;
        if (!closed.empty()) closed.push_back(closed.front());
        figure.push_back(std::move(closed));
    }
    equi_out["equipotentials"] = std::move(levels);

    write_report(cfg, "rays.json", rays_out.dump());
    write_report(cfg, "equipotentials.json", equi_out.dump());
    write_report(cfg, "rays.svg", svg_figure(figure));
    return 0;
}

// ---------------------------------------------------------------------------

Puzzle build_puzzle(const RunConfig& cfg) {
    if (cfg.limb.empty()) {
        std::cerr << "usage: puzzle construction needs --limb P/Q\n";
        std::exit(1);
    }
    const Parameter param = make_param(cfg);
    const Limb limb = parse_limb(cfg.limb);
    AngleCycle cycle;
    try {
        cycle = alpha_cycle(limb.p, limb.q);
    } catch (const NoCycle& e) {
        std::cerr << "usage: " << e.what() << "\n";
        std::exit(1);
    }
    try {
        Puzzle puzzle(param, cfg.r0, cycle);
        puzzle.refine_to(cfg.depth);
        return puzzle;
    } catch (const std::exception& e) {
        computation_failure("puzzle construction", e.what());
    }
}

int cmd_puzzle(const RunConfig& cfg) {
    Puzzle puzzle = build_puzzle(cfg);

    Json out = Json::object();
    out["meta"] = meta_block(config_echo(cfg));
    Json depths = Json::array();
    for (int d = 0; d <= puzzle.max_depth(); ++d) {
        Json level = Json::object();
        level["depth"] = d;
        Json pieces = Json::array();
        for (const PuzzlePiece& piece : puzzle.level(d)) {
            Json p = Json::object();
            p["id"] = piece.id;
            Json arcs = Json::array();
            for (const auto& [a, b] : piece.arcs) {
                Json arc = Json::array();
                arc.push_back(a.str());
                arc.push_back(b.str());
                arcs.push_back(std::move(arc));
            }
            p["arcs"] = std::move(arcs);
            p["contains_critical"] = piece.contains_critical;
            p["boundary"] = polyline_json(piece.boundary);
            pieces.push_back(std::move(p));
        }
        level["pieces"] = std::move(pieces);
        depths.push_back(std::move(level));
    }
    out["levels"] = std::move(depths);
    write_report(cfg, "puzzle.json", out.dump());

    Json markov = Json::object();
    markov["meta"] = meta_block(config_echo(cfg));
    try {
        const MarkovReport report = markov_check(puzzle);
        markov["pairs_checked"] = report.pairs_checked;
        Json violations = Json::array();
        for (const MarkovViolation& v : report.violations) {
            Json j = Json::object();
            j["depth_a"] = v.depth_a;
            j["id_a"] = v.id_a;
            j["depth_b"] = v.depth_b;
            j["id_b"] = v.id_b;
            j["kind"] = v.kind;
            j["separation"] = v.separation;
            violations.push_back(std::move(j));
        }
        markov["violations"] = std::move(violations);
    } catch (const std::exception& e) {
        computation_failure("markov check", e.what());
    }
    write_report(cfg, "markov_report.json", markov.dump());

    std::string csv = "depth,separation\n";
    for (int d = 0; d + 2 <= puzzle.max_depth(); ++d) {
        try {
            csv += std::to_string(d) + "," +
                   format_double(separation(puzzle, d)) + "\n";
        } catch (const std::exception&) {
            break;  // window exhausted
        }
    }
    write_report(cfg, "separation.csv", csv);
    return 0;
}

// ---------------------------------------------------------------------------

int cmd_tableau(const RunConfig& cfg) {
    Puzzle puzzle = build_puzzle(cfg);
    const int width = 4 * std::max(cfg.depth, 1);
    Tableau tableau;
    try {
        tableau = build_tableau(puzzle, cfg.depth, width);
    } catch (const std::exception& e) {
        computation_failure("tableau construction", e.what());
    }

    std::string csv;
    for (int i = 0; i <= tableau.max_depth(); ++i) {
        for (int j = 0; j < tableau.width; ++j) {
            if (j) csv += ',';
            csv += mark_letter(tableau.at(i, j));
        }
        csv += '\n';
    }
    write_report(cfg, "tableau.csv", csv);

    Json children = Json::object();
    children["meta"] = meta_block(config_echo(cfg));
    Json links = Json::array();
    for (int d = 0; d + 2 <= tableau.max_depth(); ++d) {
        for (const ChildLink& link : children_of(tableau, d)) {
            Json j = Json::object();
            j["parent_depth"] = link.parent_depth;
            j["child_depth"] = link.child_depth;
            j["iterate"] = link.iterate;
            j["degree"] = link.degree;
            std::string verdict = "unknown";  // window may be too shallow
            try {
                if (is_excellent(tableau, link)) verdict = "excellent";
            } catch (const WindowTooShallow&) {
            }
            j["excellence"] = verdict;
            links.push_back(std::move(j));
        }
    }
    children["links"] = std::move(links);
    write_report(cfg, "children.json", children.dump());

    Json verdicts = Json::object();
    verdicts["meta"] = meta_block(config_echo(cfg));
    const RecurrenceVerdict rec = is_recurrent(tableau);
    Json r = Json::object();
    r["recurrent_so_far"] = rec.recurrent_so_far;
    r["window_depth"] = rec.window_depth;
    r["window_width"] = rec.window_width;
    Json witnesses = Json::array();
    for (const auto& [col, depth] : rec.witnesses) {
        Json w = Json::array();
        w.push_back(col);
        w.push_back(depth);
        witnesses.push_back(std::move(w));
    }
    r["witnesses"] = std::move(witnesses);
    verdicts["recurrence"] = std::move(r);
    const PeriodicityVerdict per = is_periodic(tableau);
    Json p = Json::object();
    p["periodic_in_window"] = per.periodic_in_window;
    p["column"] = per.column;
    p["window_depth"] = per.window_depth;
    p["window_width"] = per.window_width;
    verdicts["periodicity"] = std::move(p);
    verdicts["column_rule_violations"] =
        static_cast<long long>(column_rule_violations(tableau).size());
    verdicts["unresolvable_fraction"] = unresolvable_fraction(tableau);
    write_report(cfg, "verdicts.json", verdicts.dump());
    return 0;
}

// ---------------------------------------------------------------------------

SyntheticSpec load_synthetic_spec(const RunConfig& cfg) {
    SyntheticSpec spec;
    spec.seed = static_cast<std::uint64_t>(cfg.seed);
    spec.batches = cfg.batches;
    if (cfg.spec_file.empty()) return spec;
    std::ifstream in(cfg.spec_file);
    if (!in) {
        std::cerr << "usage: cannot read spec file " << cfg.spec_file << "\n";
        std::exit(1);
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        std::cerr << "usage: malformed spec file: " << e.what() << "\n";
        std::exit(1);
    }
    spec.width = j.value("width", spec.width);
    spec.depth_cap = j.value("depth_cap", spec.depth_cap);
    spec.seed = j.value("seed", spec.seed);
    spec.generations = j.value("generations", spec.generations);
    spec.batches = j.value("batches", spec.batches);
    spec.max_attempts = j.value("max_attempts", spec.max_attempts);
    spec.violation_alpha = j.value("violation_alpha", spec.violation_alpha);
    if (j.contains("M0")) {
        if (j["M0"].is_string()) {
            spec.M0 = Rational(j["M0"].get<std::string>());
        } else {
            spec.M0 = Rational(j["M0"].get<long long>());
        }
    }
    return spec;
}

Json nest_json(const RunConfig& cfg, const Nest& nest,
               const std::vector<ComplementaryAnnulus>& alphas) {
    Json out = Json::object();
    out["meta"] = meta_block(config_echo(cfg));
    out["synthetic"] = nest.synthetic;
    out["root_depth"] = nest.root_depth;
    out["complete_generations"] = nest.complete_generations;
    if (nest.synthetic) {
        out["seed"] = static_cast<long long>(nest.seed);
        out["generation_attempts"] = nest.generation_attempts;
    }

    Json annuli = Json::array();
    for (const NestAnnulus& a : nest.annuli) {
        Json j = Json::object();
        j["index"] = a.index;
        j["depth"] = a.depth;
        j["generation"] = a.generation;
        j["parent"] = a.parent;
        j["iterate_to_parent"] = a.iterate_to_parent;
        j["iterate_to_root"] = a.iterate_to_root;
        j["covering_degree"] = static_cast<long long>(1LL << a.generation);
        j["degenerate"] = a.degenerate;
        annuli.push_back(std::move(j));
    }
    out["annuli"] = std::move(annuli);

    Json alist = Json::array();
    for (const ComplementaryAnnulus& a : alphas) {
        Json j = Json::object();
        j["index"] = a.index;
        j["outer"] = a.outer;
        j["middle"] = a.middle;
        j["inner"] = a.inner;
        j["outer_generation"] = a.outer_generation;
        j["inner_generation"] = a.inner_generation;
        j["intermediate_generation"] = a.intermediate_generation;
        j["degenerate"] = a.degenerate;
        if (nest.synthetic) j["modulus"] = rational_str(a.modulus);
        j["modulus_value"] = a.modulus_value;
        alist.push_back(std::move(j));
    }
    out["complementary_annuli"] = std::move(alist);

    Json ancestors = Json::array();
    for (const ComplementaryAnnulus& a : alphas) {
        if (a.intermediate_generation < 1) continue;
        AncestorLink link;
        try {
            link = ancestor_of(nest, alphas, a);
        } catch (const NotANest&) {
            continue;
        }
        Json j = Json::object();
        j["from"] = link.from;
        j["to"] = link.to;
        Json its = Json::array();
        for (int k : link.iterates) its.push_back(k);
        j["iterates"] = std::move(its);
        j["pullback_steps"] = link.pullback_steps;
        j["middle_degree"] = link.middle_degree;
        j["factor"] = rational_str(link.factor);
        ancestors.push_back(std::move(j));
    }
    out["ancestor_links"] = std::move(ancestors);
    return out;
}

Json divergence_json(const RunConfig& cfg, const Nest& nest,
                     const DivergenceReport& rep) {
    Json out = Json::object();
    out["meta"] = meta_block(config_echo(cfg));
    if (nest.synthetic) out["M0"] = rational_str(rep.M0);
    out["M0_value"] = nest.synthetic ? static_cast<double>(rep.M0)
                                     : rep.M0_value;
    out["parity"] = rep.parity == Parity::Even ? "even" : "odd";
    out["m0"] = rep.m0;
    out["requested_batches"] = rep.requested_batches;
    out["achieved_generations"] = rep.achieved_generations;
    out["partial"] =
        static_cast<int>(rep.batches.size()) < rep.requested_batches;
    Json batches = Json::array();
    for (const DivergenceBatch& b : rep.batches) {
        Json j = Json::object();
        j["outer_generation"] = b.outer_generation;
        Json sel = Json::array();
        for (int i : b.alphas) sel.push_back(i);
        j["alphas"] = std::move(sel);
        if (nest.synthetic) j["sum"] = rational_str(b.sum);
        j["sum_value"] = nest.synthetic ? static_cast<double>(b.sum)
                                        : b.sum_value;
        batches.push_back(std::move(j));
    }
    out["batches"] = std::move(batches);
    if (nest.synthetic) out["running_total"] = rational_str(rep.running_total);
    out["running_total_value"] = nest.synthetic
                                     ? static_cast<double>(rep.running_total)
                                     : rep.running_total_value;
    Json violations = Json::array();
    for (const std::string& v : rep.violations) violations.push_back(v);
    out["violations"] = std::move(violations);
    out["all_bounds_hold"] = rep.all_bounds_hold;
    return out;
}

int cmd_nest(const RunConfig& cfg) {
    Nest nest;
    bool partial_ok = false;
    if (cfg.mode == "synthetic") {
        try {
            nest = synthetic_nest(load_synthetic_spec(cfg));
        } catch (const InvalidSpec& e) {
            computation_failure("synthetic nest generation", e.what());
        }
    } else if (cfg.mode == "geometric") {
        partial_ok = true;  // desk-scale windows reach few generations
        Puzzle puzzle = build_puzzle(cfg);
        try {
            const Tableau tableau =
                build_tableau(puzzle, cfg.depth, 4 * std::max(cfg.depth, 1));
            nest = nest_from_tableau(tableau);
        } catch (const std::exception& e) {
            computation_failure("nest construction", e.what());
        }
    } else {
        std::cerr << "usage: --mode must be geometric or synthetic\n";
        return 1;
    }

    std::vector<ComplementaryAnnulus> alphas;
    DivergenceReport rep;
    try {
        alphas = complementary_annuli(nest);
        rep = divergence_report(nest, cfg.batches, partial_ok);
    } catch (const std::exception& e) {
        computation_failure("divergence accounting", e.what());
    }

    write_report(cfg, "nest.json", nest_json(cfg, nest, alphas).dump());
    write_report(cfg, "divergence.json",
                 divergence_json(cfg, nest, rep).dump());

    if (!rep.violations.empty()) {
        for (const std::string& v : rep.violations) std::cerr << v << "\n";
        return 3;
    }
    return 0;
}

// ---------------------------------------------------------------------------

int cmd_modulus(const RunConfig& cfg) {
    std::ifstream in(cfg.region_file);
    if (!in) {
        std::cerr << "usage: cannot read region file " << cfg.region_file
                  << "\n";
        return 1;
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        std::cerr << "usage: malformed region file: " << e.what() << "\n";
        return 1;
    }
    AnnulusRegion region;
    try {
        for (const auto& pt : j.at("outer")) {
            region.outer.emplace_back(pt.at(0).get<double>(),
                                      pt.at(1).get<double>());
        }
        for (const auto& pt : j.at("inner")) {
            region.inner.emplace_back(pt.at(0).get<double>(),
                                      pt.at(1).get<double>());
        }
    } catch (const std::exception& e) {
        std::cerr << "usage: region file needs outer/inner point lists: "
                  << e.what() << "\n";
        return 1;
    }

    ModulusEstimate est;
    try {
        est = estimate_modulus(region, cfg.grid, cfg.tol, true);
    } catch (const Disconnected& e) {
        computation_failure("modulus (disconnected region)", e.what());
    } catch (const ResolutionTooCoarse& e) {
        computation_failure("modulus (resolution too coarse)", e.what());
    }

    Json out = Json::object();
    out["meta"] = meta_block(config_echo(cfg));
    out["value"] = est.value;
    out["resolution"] = est.resolution;
    out["residual"] = est.residual;
    out["degenerate"] = est.degenerate;
    Json history = Json::array();
    for (double v : est.refinement_history) history.push_back(v);
    out["refinement_history"] = std::move(history);
    Json pinches = Json::array();
    for (Complex z : est.pinch_evidence) pinches.push_back(complex_json(z));
    out["pinch_evidence"] = std::move(pinches);
    write_report(cfg, "modulus.json", out.dump());
    return 0;
}

void add_common_flags(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--c-re", cfg.c_re, "real part of c");
    cmd->add_option("--c-im", cfg.c_im, "imaginary part of c");
    cmd->add_option("--limb", cfg.limb, "rotation number P/Q of alpha");
    cmd->add_option("--angles", cfg.angles, "comma-separated ray angles");
    cmd->add_option("--depth", cfg.depth, "puzzle depth")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--r0", cfg.r0, "depth-0 equipotential level")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--grid", cfg.grid, "modulus grid resolution")
        ->check(CLI::IsMember({64, 128, 256, 512, 1024, 2048, 4096}));
    cmd->add_option("--tol", cfg.tol, "numerical tolerance")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--mode", cfg.mode, "geometric | synthetic")
        ->check(CLI::IsMember({"geometric", "synthetic"}));
    cmd->add_option("--spec", cfg.spec_file, "synthetic nest spec (JSON)");
    cmd->add_option("--batches", cfg.batches, "divergence batch count")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--out", cfg.out, "output directory");
    cmd->add_option("--threads", cfg.threads, "worker thread cap")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", cfg.seed, "synthetic seed");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Yoccoz puzzle, tableau, and dual-nest reports"};
    app.require_subcommand(1);
    RunConfig cfg;

    CLI::App* rays = app.add_subcommand("rays", "trace external rays");
    CLI::App* puzzle = app.add_subcommand("puzzle", "build the puzzle");
    CLI::App* tableau = app.add_subcommand("tableau", "critical-orbit marks");
    CLI::App* nest = app.add_subcommand("nest", "dual nest + accounting");
    CLI::App* modulus = app.add_subcommand("modulus", "conformal modulus");
    for (CLI::App* cmd : {rays, puzzle, tableau, nest, modulus}) {
        add_common_flags(cmd, cfg);
    }
    modulus->add_option("region", cfg.region_file, "region file (JSON)")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (rays->parsed()) return cmd_rays(cfg);
        if (puzzle->parsed()) return cmd_puzzle(cfg);
        if (tableau->parsed()) return cmd_tableau(cfg);
        if (nest->parsed()) return cmd_nest(cfg);
        if (modulus->parsed()) return cmd_modulus(cfg);
    } catch (const std::exception& e) {
        computation_failure("unexpected", e.what());
    }
    return 1;
}
