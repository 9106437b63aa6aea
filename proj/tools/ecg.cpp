#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ecg/error.hpp"
#include "ecg/io.hpp"
#include "ecg/report.hpp"

namespace fs = std::filesystem;
using ecg::report::Json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInputError = 2;
constexpr int kExitInternal = 3;

struct InputError {
    int code;
};

bool use_color() {
    const char* env = std::getenv("ECG_COLOR");
    if (env && std::string(env) == "0") return false;
    return isatty(fileno(stdout));
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot read " << path << "\n";
        throw InputError{kExitInputError};
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

ecg::EdgeColoredGraph load_graph(const std::string& path) {
    auto parsed = ecg::io::parse_graph(read_file(path), path);
    if (!parsed.ok()) {
        for (const auto& e : parsed.errors) std::cerr << e.message() << "\n";
        throw InputError{kExitInputError};
    }
    return *parsed.graph;
}

std::vector<std::string> expand_inputs(const std::string& path) {
    if (!fs::exists(path)) {
        std::cerr << "error: no such file or directory: " << path << "\n";
        throw InputError{kExitInputError};
    }
    if (!fs::is_directory(path)) return {path};
    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(path))
        if (entry.is_regular_file() && entry.path().extension() == ".ecg")
            files.push_back(entry.path().string());
    std::sort(files.begin(), files.end());
    if (files.empty()) {
        std::cerr << "error: no .ecg files in " << path << "\n";
        throw InputError{kExitInputError};
    }
    return files;
}

int cmd_analyze(const std::string& path, bool json) {
    auto files = expand_inputs(path);
    if (json) {
        Json out = files.size() == 1 ? ecg::report::analyze_json(load_graph(files[0]))
                                     : Json::array();
        if (files.size() > 1)
            for (const auto& f : files) out.push_back(ecg::report::analyze_json(load_graph(f)));
        std::cout << ecg::report::dump(out);
    } else {
        bool first = true;
        for (const auto& f : files) {
            if (!first) std::cout << "\n";
            first = false;
            std::cout << ecg::report::analyze_text(load_graph(f), use_color());
        }
    }
    return kExitOk;
}

int cmd_ktheory(const std::string& path, bool json) {
    auto g = load_graph(path);
    if (json)
        std::cout << ecg::report::dump(ecg::report::ktheory_json(g));
    else
        std::cout << ecg::report::ktheory_text(g, use_color());
    return kExitOk;
}

int cmd_color_number(const std::string& path, bool json) {
    auto g = load_graph(path);
    if (json) {
        Json j;
        j["graph"] = g.name;
        j["coloring_number"] = ecg::coloring_number(g);
        std::cout << ecg::report::dump(j);
    } else {
        std::cout << ecg::coloring_number(g) << "\n";
    }
    return kExitOk;
}

int cmd_free_product(const std::vector<std::string>& paths, const std::string& share) {
    std::vector<ecg::EdgeColoredGraph> factors;
    for (const auto& p : paths) factors.push_back(load_graph(p));
    std::set<std::string> shared;
    std::stringstream ss(share);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) shared.insert(item);
    try {
        std::cout << ecg::io::emit_graph(ecg::free_product(factors, shared));
    } catch (const ecg::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitOk;
}

ecg::star::GeneratorMap load_genmap(const std::string& path,
                                    const std::map<std::string, ecg::EdgeColoredGraph>& graphs) {
    auto text = read_file(path);
    auto header = ecg::io::peek_hom_header(text);
    if (!header) {
        std::cerr << path << ": not a hom file (expected 'hom NAME : SRC -> TGT')\n";
        throw InputError{kExitInputError};
    }
    auto src = graphs.find(header->source);
    auto tgt = graphs.find(header->target);
    if (src == graphs.end() || tgt == graphs.end()) {
        std::cerr << path << ": graph '" << (src == graphs.end() ? header->source : header->target)
                  << "' was not supplied on the command line\n";
        throw InputError{kExitInputError};
    }
    auto parsed = ecg::io::parse_genmap(text, src->second, tgt->second, path);
    if (!parsed.ok()) {
        for (const auto& e : parsed.errors) std::cerr << e.message() << "\n";
        throw InputError{kExitInputError};
    }
    return *parsed.map;
}

int cmd_verify_hom(const std::vector<std::string>& graph_paths, const std::string& map_path,
                   const std::string& inverse_path, bool json) {
    std::map<std::string, ecg::EdgeColoredGraph> graphs;
    for (const auto& p : graph_paths) {
        auto g = load_graph(p);
        graphs[g.name] = g;
    }
    auto m = load_genmap(map_path, graphs);
    auto rep = ecg::star::verify_homomorphism(m);
    bool all = rep.all_hold();

    Json out;
    out["map"] = m.name;
    out["verification"] = ecg::report::verify_json(rep);
    std::string text = ecg::report::verify_text(rep, "map " + m.name, use_color());

    if (!inverse_path.empty()) {
        auto inv = load_genmap(inverse_path, graphs);
        auto inv_rep = ecg::star::verify_homomorphism(inv);
        auto comp_rep = ecg::star::verify_mutually_inverse(m, inv);
        all = all && inv_rep.all_hold() && comp_rep.all_hold();
        out["inverse"] = inv.name;
        out["inverse_verification"] = ecg::report::verify_json(inv_rep);
        out["compositions"] = ecg::report::verify_json(comp_rep);
        text += ecg::report::verify_text(inv_rep, "map " + inv.name, use_color());
        text += ecg::report::verify_text(comp_rep, "compositions", use_color());
    }
    if (json)
        std::cout << ecg::report::dump(out);
    else
        std::cout << text;
    return all ? kExitOk : kExitVerifyFailed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"edge-colored directed graph algebra toolkit"};
    app.require_subcommand(1);

    std::string path, map_path, inverse_path, share;
    std::vector<std::string> paths;
    bool json = false;

    auto* analyze = app.add_subcommand("analyze", "structural verdicts and K-theory for a graph");
    analyze->add_option("path", path, "graph file or directory of .ecg files")->required();
    analyze->add_flag("--json", json, "machine-readable report");

    auto* kth = app.add_subcommand("ktheory", "K0/K1 with vertex classes");
    kth->add_option("path", path)->required();
    kth->add_flag("--json", json);

    auto* cn = app.add_subcommand("color-number", "coloring number of a graph");
    cn->add_option("path", path)->required();
    cn->add_flag("--json", json);

    auto* vh = app.add_subcommand("verify-hom", "verify a generator map file");
    vh->add_option("graphs", paths, "graph files referenced by the map")->required();
    vh->add_option("--map", map_path, "hom file to verify")->required();
    vh->add_option("--inverse", inverse_path, "hom file for the inverse direction");
    vh->add_flag("--json", json);

    auto* fp = app.add_subcommand("free-product", "emit the free product graph");
    fp->add_option("graphs", paths, "factor graph files")->required();
    fp->add_option("--share", share, "comma-separated shared vertex ids");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? kExitInputError : kExitOk;
    }

    try {
        if (*analyze) return cmd_analyze(path, json);
        if (*kth) return cmd_ktheory(path, json);
        if (*cn) return cmd_color_number(path, json);
        if (*vh) return cmd_verify_hom(paths, map_path, inverse_path, json);
        if (*fp) return cmd_free_product(paths, share);
    } catch (const InputError& e) {
        return e.code;
    } catch (const ecg::InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    } catch (const ecg::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitOk;
}
