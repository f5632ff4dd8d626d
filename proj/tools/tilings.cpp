#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "dds/develop.hpp"
#include "dds/enumerate.hpp"
#include "dds/invariants.hpp"
#include "dds/layout.hpp"
#include "dds/orbifold.hpp"
#include "dds/query.hpp"
#include "dds/record.hpp"
#include "dds/render.hpp"
#include "dds/store.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitInternal = 3;

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

dds::DelaneySymbol symbol_from(const std::string& arg, const std::string& file) {
    if (!file.empty()) {
        std::ifstream in(file);
        if (!in) throw dds::ValidationError("cannot read " + file);
        std::string line;
        while (std::getline(in, line))
            if (!line.empty()) return dds::parse_symbol(line);
        throw dds::ValidationError(file + " contains no symbol");
    }
    return dds::parse_symbol(arg);
}

int run_enumerate(int max_complexity, const std::string& geometry, int jobs,
                  const std::string& out_path) {
    dds::EnumerateOptions opt;
    opt.max_complexity = max_complexity;
    opt.jobs = jobs;
    if (!geometry.empty()) {
        if (geometry == "sph") opt.geometry = dds::GeometryKind::Spherical;
        else if (geometry == "euc") opt.geometry = dds::GeometryKind::Euclidean;
        else if (geometry == "hyp") opt.geometry = dds::GeometryKind::Hyperbolic;
        else {
            std::cerr << "unknown geometry filter: " << geometry << "\n";
            return kExitUsage;
        }
    }
    opt.progress = [](const std::string& msg) { std::cerr << "\r" << msg << std::flush; };

    std::vector<dds::TilingRecord> records;
    long long next_id = 1;
    auto consume = [&](const dds::DelaneySymbol& s) {
        dds::TilingRecord r = dds::make_record(s);
        r.id = next_id++;
        records.push_back(std::move(r));
    };
    dds::enumerate_symbols(opt, consume);
    if (opt.progress) std::cerr << "\n";

    if (out_path.empty()) {
        dds::write_tsv(records, std::cout);
    } else if (ends_with(out_path, ".tdb")) {
        dds::write_database(records, out_path);
        std::cerr << records.size() << " records written to " << out_path << "\n";
    } else if (ends_with(out_path, ".tsv")) {
        dds::write_tsv_file(records, out_path);
        std::cerr << records.size() << " records written to " << out_path << "\n";
    } else {
        std::cerr << "output must end in .tdb or .tsv\n";
        return kExitUsage;
    }
    return kExitOk;
}

int run_analyze(const dds::DelaneySymbol& s) {
    dds::TilingRecord r = dds::make_record(s);
    std::cout << "symbol: " << r.symbol << "\n"
              << "complexity: " << r.complexity << "\n"
              << "geometry: " << r.geometry << "\n"
              << "curvature: " << r.curvature << "\n"
              << "euler: " << dds::format_real(r.euler) << "\n"
              << "orbifold: " << r.orbifold << "\n"
              << "symmetry_class: " << r.symmetry_class << "\n"
              << "signature: " << r.signature << "\n"
              << "tile_deg: " << r.tile_deg << "\n"
              << "vertex_deg: " << r.vertex_deg << "\n"
              << "tiles: " << r.tiles << "\n"
              << "edges: " << r.edges << "\n"
              << "vertices: " << r.vertices << "\n"
              << "normal: " << (r.normal ? "true" : "false") << "\n"
              << "maximal: " << (r.maximal ? "true" : "false") << "\n"
              << "colorable: " << (r.colorable ? "true" : "false") << "\n"
              << "orientable: " << (r.orientable ? "true" : "false") << "\n"
              << "fixed_point_free: " << (r.fixed_point_free ? "true" : "false") << "\n"
              << "self_dual: " << (r.self_dual ? "true" : "false") << "\n"
              << "trace: " << dds::canonical_trace(s) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Delaney-Dress symbol toolkit: enumerate, analyze, store, query and render "
                 "two-dimensional periodic tilings"};
    app.require_subcommand(1);

    // enumerate
    auto* cmd_enum = app.add_subcommand("enumerate", "enumerate geometry-minimal symbols");
    int max_complexity = 1;
    std::string geometry, out_path;
    int jobs = 1;
    cmd_enum->add_option("--max-complexity", max_complexity, "largest symbol size")
        ->required()
        ->check(CLI::PositiveNumber);
    cmd_enum->add_option("--geometry", geometry, "filter: sph|euc|hyp");
    cmd_enum->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    cmd_enum->add_option("--out", out_path, "output file (.tdb or .tsv); stdout TSV if absent");

    // analyze
    auto* cmd_analyze = app.add_subcommand("analyze", "print all invariants of a symbol");
    std::string analyze_symbol, analyze_file;
    cmd_analyze->add_option("symbol", analyze_symbol, "symbol text, e.g. \"<1:1,1,1:4,4>\"");
    cmd_analyze->add_option("--file", analyze_file, "read the symbol from a file");

    // canon
    auto* cmd_canon = app.add_subcommand("canon", "print canonical encoding and trace");
    std::string canon_symbol;
    cmd_canon->add_option("symbol", canon_symbol, "symbol text")->required();

    // render
    auto* cmd_render = app.add_subcommand("render", "render a tiling to SVG");
    std::string render_symbol, render_model = "euclidean", render_out;
    double render_radius = 0.0;
    int render_size = 512;
    cmd_render->add_option("symbol", render_symbol, "symbol text")->required();
    cmd_render->add_option("--model", render_model, "euclidean|poincare|klein|orthographic")
        ->required();
    cmd_render->add_option("--radius", render_radius, "model radius / region half-width factor");
    cmd_render->add_option("--size", render_size, "image size in pixels");
    cmd_render->add_option("-o,--out", render_out, "output SVG path")->required();

    // db
    auto* cmd_db = app.add_subcommand("db", "database operations");
    cmd_db->require_subcommand(1);
    auto* cmd_query = cmd_db->add_subcommand("query", "evaluate a query over a database");
    std::string db_path, query_text, query_format = "tsv";
    cmd_query->add_option("database", db_path, "path to FILE.tdb")->required();
    cmd_query->add_option("-e,--expr", query_text, "query expression")->required();
    cmd_query->add_option("--format", query_format, "tsv|symbols");
    auto* cmd_build = cmd_db->add_subcommand("build", "build a database from a TSV export");
    std::string build_from, build_out;
    cmd_build->add_option("--from", build_from, "input TSV")->required();
    cmd_build->add_option("--out", build_out, "output FILE.tdb")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (cmd_enum->parsed())
            return run_enumerate(max_complexity, geometry, jobs, out_path);
        if (cmd_analyze->parsed()) {
            if (analyze_symbol.empty() && analyze_file.empty()) {
                std::cerr << "analyze needs a symbol or --file\n";
                return kExitUsage;
            }
            return run_analyze(symbol_from(analyze_symbol, analyze_file));
        }
        if (cmd_canon->parsed()) {
            dds::DelaneySymbol s = dds::parse_symbol(canon_symbol);
            std::cout << dds::serialize(dds::canonical_form(s)) << "\n"
                      << dds::canonical_trace(s) << "\n";
            return kExitOk;
        }
        if (cmd_render->parsed()) {
            dds::DelaneySymbol s = dds::parse_symbol(render_symbol);
            dds::RenderOptions opt;
            opt.model = dds::model_from_name(render_model);
            opt.radius = render_radius;
            opt.style.size_px = render_size;
            std::string svg = dds::render_svg(s, opt);
            std::ofstream out(render_out, std::ios::binary);
            if (!out) {
                std::cerr << "cannot write " << render_out << "\n";
                return kExitValidation;
            }
            out << svg;
            return kExitOk;
        }
        if (cmd_query->parsed()) {
            dds::QueryExpr q = dds::parse_query(query_text);
            std::vector<dds::TilingRecord> rows = dds::read_database(db_path);
            std::vector<dds::TilingRecord> hits = dds::eval_query(q, rows);
            if (query_format == "symbols") {
                for (const auto& r : hits) std::cout << r.symbol << "\n";
            } else if (query_format == "tsv") {
                dds::write_tsv(hits, std::cout);
            } else {
                std::cerr << "unknown format: " << query_format << "\n";
                return kExitUsage;
            }
            std::cerr << hits.size() << " rows\n";
            return kExitOk;
        }
        if (cmd_build->parsed()) {
            std::vector<dds::TilingRecord> rows = dds::read_tsv_file(build_from);
            dds::write_database(rows, build_out);
            std::cerr << rows.size() << " records written to " << build_out << "\n";
            return kExitOk;
        }
    } catch (const dds::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitValidation;
    } catch (const dds::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return kExitValidation;
    } catch (const dds::QueryError& e) {
        std::cerr << e.what() << "\n";
        return kExitValidation;
    } catch (const dds::StoreError& e) {
        std::cerr << e.what() << "\n";
        return kExitValidation;
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitUsage;
}
