#include "ecg/report.hpp"

#include <sstream>

#include "ecg/error.hpp"

namespace ecg::report {

namespace {

Json int_json(const abelian::Int& x) {
    if (x.fits_slong_p()) return Json(x.get_si());
    return Json(x.get_str()); // beyond int64: keep exact as a string
}

const char* kAnsiReset = "\x1b[0m";

std::string paint(const std::string& s, const char* code, bool color) {
    if (!color) return s;
    return std::string("\x1b[") + code + "m" + s + kAnsiReset;
}

std::string good(const std::string& s, bool color) { return paint(s, "32", color); }
std::string bad(const std::string& s, bool color) { return paint(s, "31", color); }

} // namespace

Json group_json(const abelian::FgAbelianGroup& g) {
    Json j;
    j["rank"] = g.rank;
    Json t = Json::array();
    for (const auto& d : g.torsion) t.push_back(int_json(d));
    j["torsion"] = t;
    return j;
}

Json witness_json(const std::optional<analyzers::Witness>& w) {
    if (!w) return Json(nullptr);
    Json j;
    j["vertices"] = w->vertices;
    j["edges"] = w->edges;
    j["colors"] = w->colors;
    return j;
}

Json ktheory_block(const ktheory::KPair& k) {
    Json j;
    j["k0"] = group_json(k.k0.group());
    j["k1"] = group_json(k.k1);
    Json classes;
    for (size_t v = 0; v < k.vertices.size(); ++v) {
        Json coords = Json::array();
        for (const auto& c : k.vertex_class_of(int(v))) coords.push_back(int_json(c));
        classes[k.vertices[v]] = coords;
    }
    j["vertex_classes"] = classes;
    return j;
}

Json analyze_json(const EdgeColoredGraph& g) {
    Json j;
    j["graph"] = g.name;
    j["coloring_number"] = coloring_number(g);
    j["row_finite"] = analyzers::is_row_finite(g).outcome == analyzers::Outcome::Pass;
    {
        auto v = analyzers::simplicity_necessary(g);
        Json s;
        s["pass"] = v.outcome == analyzers::Outcome::Pass;
        s["witness"] = witness_json(v.witness);
        j["simplicity_necessary"] = s;
    }
    {
        auto v = analyzers::nonexact_witnesses(g);
        Json s;
        s["verdict"] = outcome_name(v.outcome);
        s["witness"] = witness_json(v.witness);
        j["exactness"] = s;
    }
    {
        auto v = analyzers::nuclearity_heuristic(g);
        Json s;
        s["verdict"] = outcome_name(v.outcome);
        s["reason"] = v.reason;
        j["nuclearity"] = s;
    }
    j["k_theory"] = ktheory_block(ktheory::k_edge_colored(g));
    return j;
}

Json ktheory_json(const EdgeColoredGraph& g) {
    Json j;
    j["graph"] = g.name;
    j["k_theory"] = ktheory_block(ktheory::k_edge_colored(g));
    return j;
}

Json verify_json(const star::VerifyReport& rep) {
    Json j;
    Json images = Json::array();
    for (const auto& [gen, poly] : rep.images) {
        Json e;
        e["generator"] = gen;
        e["reduced"] = poly.to_string();
        images.push_back(e);
    }
    j["images"] = images;
    Json rels = Json::array();
    for (const auto& r : rep.relations) {
        Json e;
        e["relation"] = r.id;
        e["description"] = r.description;
        switch (r.status) {
            case star::RelationStatus::Holds: e["status"] = "holds"; break;
            case star::RelationStatus::Fails: e["status"] = "fails"; break;
            case star::RelationStatus::Unproved: e["status"] = "unproved"; break;
        }
        e["residual"] = r.residual.to_string();
        rels.push_back(e);
    }
    j["relations"] = rels;
    j["all_hold"] = rep.all_hold();
    return j;
}

namespace {

std::string witness_text(const std::optional<analyzers::Witness>& w) {
    if (!w) return "";
    std::ostringstream os;
    os << " [";
    bool first = true;
    auto item = [&](const std::string& s) {
        if (!first) os << " ";
        first = false;
        os << s;
    };
    for (const auto& v : w->vertices) item("vertex " + v);
    for (const auto& e : w->edges) item("edge " + e);
    if (!w->colors.empty()) {
        std::string cs = "colors {";
        for (size_t i = 0; i < w->colors.size(); ++i)
            cs += (i ? "," : "") + std::to_string(w->colors[i]);
        item(cs + "}");
    }
    os << "]";
    return os.str();
}

std::string ktheory_lines(const ktheory::KPair& k) {
    std::ostringstream os;
    os << "K0: " << k.k0.group().to_string() << "\n";
    os << "K1: " << k.k1.to_string() << "\n";
    for (size_t v = 0; v < k.vertices.size(); ++v) {
        os << "  [p_" << k.vertices[v] << "] = (";
        auto coords = k.vertex_class_of(int(v));
        for (size_t i = 0; i < coords.size(); ++i) os << (i ? ", " : "") << coords[i];
        os << ")\n";
    }
    return os.str();
}

} // namespace

std::string analyze_text(const EdgeColoredGraph& g, bool color) {
    std::ostringstream os;
    os << "graph: " << g.name << "\n";
    os << "coloring number: " << coloring_number(g) << "\n";
    auto rf = analyzers::is_row_finite(g);
    os << "row finite: yes\n";
    if (!rf.indegrees.empty()) {
        os << "  in-degrees:";
        for (const auto& e : rf.indegrees)
            os << " (" << e.vertex << "," << e.color << ")=" << e.count;
        os << "\n";
    }
    auto sn = analyzers::simplicity_necessary(g);
    if (sn.outcome == analyzers::Outcome::Pass)
        os << "simplicity necessary: " << good("pass", color)
           << " (necessary conditions hold, not sufficient)\n";
    else
        os << "simplicity necessary: " << bad("fail", color) << " (" << sn.reason << ")"
           << witness_text(sn.witness) << "\n";
    auto ex = analyzers::nonexact_witnesses(g);
    os << "exactness: "
       << (ex.outcome == analyzers::Outcome::NotExact ? bad("not_exact", color) : "unknown")
       << witness_text(ex.witness) << "\n";
    auto nu = analyzers::nuclearity_heuristic(g);
    os << "nuclearity: "
       << (nu.outcome == analyzers::Outcome::Nuclear ? good("nuclear", color) : "unknown") << " ("
       << nu.reason << ")\n";
    os << ktheory_lines(ktheory::k_edge_colored(g));
    return os.str();
}

std::string ktheory_text(const EdgeColoredGraph& g, bool) {
    std::ostringstream os;
    os << "graph: " << g.name << "\n" << ktheory_lines(ktheory::k_edge_colored(g));
    return os.str();
}

std::string verify_text(const star::VerifyReport& rep, const std::string& heading, bool color) {
    std::ostringstream os;
    os << heading << "\n";
    for (const auto& [gen, poly] : rep.images)
        os << "  image " << gen << " = " << poly.to_string() << "\n";
    for (const auto& r : rep.relations) {
        std::string st;
        switch (r.status) {
            case star::RelationStatus::Holds: st = good("holds", color); break;
            case star::RelationStatus::Fails: st = bad("FAILS", color); break;
            case star::RelationStatus::Unproved: st = paint("unproved", "33", color); break;
        }
        os << "  " << r.id << ": " << st;
        if (r.status != star::RelationStatus::Holds)
            os << "  residual: " << r.residual.to_string();
        os << "\n";
    }
    os << (rep.all_hold() ? good("all relations hold", color)
                          : bad("some relations do not hold", color))
       << "\n";
    return os.str();
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

} // namespace ecg::report
