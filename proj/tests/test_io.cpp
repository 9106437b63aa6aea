#include <doctest.h>

#include <random>

#include "ecg/graph.hpp"
#include "ecg/io.hpp"
#include "helpers.hpp"

using namespace ecg;

TEST_CASE("parse_graph on the basic grammar") {
    auto r = io::parse_graph("graph L2 { vertex v; edge a: v -> v @ 1; edge b: v -> v @ 1; }");
    REQUIRE(r.ok());
    CHECK(r.graph->name == "L2");
    CHECK(r.graph->vertices == std::vector<std::string>{"v"});
    REQUIRE(r.graph->edges.size() == 2);
    CHECK(r.graph->edges[1].id == "b");

    // omitted color defaults to 1
    auto d = io::parse_graph("graph g { vertex v; edge a: v -> v; }");
    REQUIRE(d.ok());
    CHECK(d.graph->edges[0].color == 1);

    // vertex lists and comments
    auto v = io::parse_graph("# heading\ngraph g { vertex a, b, c; # inline\n }");
    REQUIRE(v.ok());
    CHECK(v.graph->vertices.size() == 3);
}

TEST_CASE("parse_graph reports spans for semantic errors") {
    std::string text = "graph g { vertex v; edge a: v -> w @ 1; }";
    auto r = io::parse_graph(text, "t.ecg");
    REQUIRE_FALSE(r.ok());
    REQUIRE(r.errors.size() == 1);
    const auto& e = r.errors[0];
    CHECK(e.found == "w");
    CHECK(e.span.line == 1);
    CHECK(text.substr(e.span.offset, 1) == "w");
    CHECK(e.message() == "t.ecg:1:34: expected declared vertex (unknown vertex w), found w");

    auto dup = io::parse_graph("graph g { vertex v; edge a: v -> v; edge a: v -> v; }");
    REQUIRE_FALSE(dup.ok());
    CHECK(dup.errors[0].expected.find("duplicate edge id") != std::string::npos);

    auto zero = io::parse_graph("graph g { vertex v; edge a: v -> v @ 0; }");
    REQUIRE_FALSE(zero.ok());
    CHECK(zero.errors[0].expected == "positive color");
}

TEST_CASE("parse_graph accumulates errors up to the cap") {
    std::string text = "graph g {\n";
    for (int i = 0; i < 50; ++i) text += "edge e" + std::to_string(i) + ": a -> b;\n";
    text += "}";
    auto r = io::parse_graph(text);
    REQUIRE_FALSE(r.ok());
    CHECK(r.errors.size() == 32);
}

TEST_CASE("emit_graph is canonical and round-trips") {
    for (const auto& name :
         {"l2.ecg", "m2.ecg", "path3.ecg", "counterexample.ecg", "three_colored_pair.ecg",
          "o2_o2.ecg", "o2_o3.ecg", "o2_o4.ecg", "o2_ct.ecg", "m3_left.ecg", "m3_right.ecg",
          "m3_product.ecg", "gn3.ecg", "h2v.ecg", "g3_rev.ecg", "circle.ecg", "l3.ecg",
          "two_loops_bicolor.ecg"}) {
        auto g = ecgtest::fixture(name);
        auto text = io::emit_graph(g);
        CHECK(text == io::emit_graph(g)); // deterministic
        auto back = io::parse_graph(text, name);
        REQUIRE(back.ok());
        CHECK(*back.graph == canonical(g));
        CHECK(back.graph->name == g.name);
        CHECK(io::emit_graph(*back.graph) == text); // idempotent
    }
}

TEST_CASE("fixture files are already canonical on disk") {
    for (const auto& name : {"l2.ecg", "counterexample.ecg", "o2_o4.ecg", "gn3.ecg"}) {
        auto g = ecgtest::fixture(name);
        CHECK(g == canonical(g));
    }
}

TEST_CASE("emitted free product parses back") {
    auto h = free_product({ecgtest::fixture("m3_left.ecg"), ecgtest::fixture("m3_right.ecg")},
                          {"v1", "v2", "v3"});
    auto r = io::parse_graph(io::emit_graph(h));
    REQUIRE(r.ok());
    CHECK(r.graph->vertices.size() == 3);
    CHECK(r.graph->edges.size() == 2);
    CHECK(r.graph->colors_used() == std::vector<int>{1, 2});
}

TEST_CASE("parse_genmap on the counterexample map") {
    auto cx = ecgtest::fixture("counterexample.ecg");
    auto h = ecgtest::fixture("h2v.ecg");
    auto r = io::parse_genmap(ecgtest::fixture_text("tau.hom"), cx, h, "tau.hom");
    REQUIRE(r.ok());
    CHECK(r.map->name == "tau");
    CHECK(r.map->vertex_images.size() == 3);
    CHECK(r.map->edge_images.size() == 6);
    CHECK(r.map->edge_images[2].to_string() == "0"); // x3's image dies
}

TEST_CASE("parse_genmap diagnoses missing and malformed assignments") {
    auto l2 = ecgtest::fixture("l2.ecg");

    auto missing = io::parse_genmap("hom f: l2 -> l2 { vertex v => p(v); edge a => S(a); }",
                                    l2, l2);
    REQUIRE_FALSE(missing.ok());
    REQUIRE(missing.errors.size() == 1);
    CHECK(missing.errors[0].expected == "assignment for edge b");

    auto trailing = io::parse_genmap(
        "hom f: l2 -> l2 { vertex v => p(v); edge a => S(a) + ; edge b => S(b); }", l2, l2);
    REQUIRE_FALSE(trailing.ok());
    CHECK(trailing.errors[0].expected == "term");

    auto unknown = io::parse_genmap(
        "hom f: l2 -> l2 { vertex v => p(v); edge a => S(zz); edge b => S(b); }", l2, l2);
    REQUIRE_FALSE(unknown.ok());
    CHECK(unknown.errors[0].expected.find("unknown generator") != std::string::npos);

    auto wrongnames = io::parse_genmap("hom f: nope -> l2 { }", l2, l2);
    CHECK_FALSE(wrongnames.ok());
}

TEST_CASE("expression grammar corners") {
    auto l2 = ecgtest::fixture("l2.ecg");
    auto r = io::parse_genmap(
        "hom f: l2 -> l2 {\n"
        "  vertex v => 1;\n"                         // the unit literal
        "  edge a => 2/3 S(a) S*(b) - S(b) + 1;\n"   // coefficients and signs
        "  edge b => - S(b);\n"                      // leading minus
        "}",
        l2, l2);
    REQUIRE(r.ok());
    auto ctx = r.map->target;
    CHECK(r.map->vertex_images[0] == ecg::star::StarPolynomial::unit(ctx));
    auto expected = (ecg::star::StarPolynomial::edge(ctx, "a") *
                     ecg::star::StarPolynomial::edge_star(ctx, "b")).scaled(mpq_class(2, 3)) -
                    ecg::star::StarPolynomial::edge(ctx, "b") + ecg::star::StarPolynomial::unit(ctx);
    CHECK(r.map->edge_images[0] == expected);
}

TEST_CASE("hom header peek") {
    auto h = io::peek_hom_header("# c\nhom tau: counterexample -> h2v { }");
    REQUIRE(h.has_value());
    CHECK(h->name == "tau");
    CHECK(h->source == "counterexample");
    CHECK(h->target == "h2v");
    CHECK_FALSE(io::peek_hom_header("graph g { }").has_value());
}

TEST_CASE("fuzzed inputs neither crash nor produce invalid graphs") {
    std::mt19937_64 rng(31);
    const std::string alphabet = "graphvertexedge{};:,->@=>#()+-/*0123456789 \n\r\t_S*p";
    for (int trial = 0; trial < 1500; ++trial) {
        std::string text;
        int len = int(rng() % 120);
        for (int i = 0; i < len; ++i) text += alphabet[rng() % alphabet.size()];
        auto r = io::parse_graph(text, "fuzz");
        if (r.ok()) CHECK(validate(*r.graph).ok());
        for (const auto& e : r.errors) CHECK(e.span.offset <= text.size());
    }
    // mutated fixtures
    auto base = ecgtest::fixture_text("counterexample.ecg");
    for (int trial = 0; trial < 500; ++trial) {
        std::string text = base;
        int cuts = 1 + int(rng() % 4);
        for (int i = 0; i < cuts; ++i) {
            size_t pos = rng() % text.size();
            switch (rng() % 3) {
                case 0: text.erase(pos, 1 + rng() % 3); break;
                case 1: text.insert(pos, 1, alphabet[rng() % alphabet.size()]); break;
                default: text[pos] = alphabet[rng() % alphabet.size()];
            }
            if (text.empty()) text = "x";
        }
        auto r = io::parse_graph(text, "fuzz");
        if (r.ok()) CHECK(validate(*r.graph).ok());
        for (const auto& e : r.errors) CHECK(e.span.offset <= text.size());
    }
}

TEST_CASE("CRLF input is accepted, LF is emitted") {
    auto r = io::parse_graph("graph g {\r\n vertex v;\r\n edge a: v -> v @ 2;\r\n}\r\n");
    REQUIRE(r.ok());
    CHECK(io::emit_graph(*r.graph).find('\r') == std::string::npos);
}
