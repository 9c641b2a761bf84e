#include <doctest.h>

#include "mft/dse.hpp"

#include <algorithm>
#include <set>

using namespace mft;

namespace {

RibbonGraph fishH() {
    return parseGraph("H=8; sigma=(1 4 3 2)(5 8 7 6); alpha=(3 5)(4 8); ext=1,2,6,7");
}
RibbonGraph fishV() {
    return parseGraph("H=8; sigma=(1 4 3 2)(5 8 7 6); alpha=(2 5)(3 8); ext=1,4,6,7");
}
RibbonGraph sunriseGraph() {
    return parseGraph("H=8; sigma=(1 4 3 2)(5 8 7 6); alpha=(2 5)(3 8)(4 7); ext=1,6");
}

GraphMonomial mono(const RibbonGraph& g) { return generatorMonomial(serialize(g)); }

} // namespace

TEST_CASE("primitivity of the basic graphs") {
    auto tads = enumerateGraphs({2, 1, EnumFilter::OnePI});
    for (const auto& t : tads) CHECK(isPrimitive(t));
    CHECK(isPrimitive(fishH()));
    CHECK(isPrimitive(fishV()));
    CHECK_FALSE(isPrimitive(sunriseGraph()));
}

TEST_CASE("no 4-point primitives at two or three loops") {
    CHECK(primitives4(1).size() == 2);
    CHECK(primitives4(2).empty());
    CHECK(primitives4(3).empty());
}

TEST_CASE("the wheel-chain family is primitive") {
    RibbonGraph box = primitiveFamily(1);
    CHECK(internalPairs(box).size() == 8);
    CHECK(vertexCount(box) == 5);
    Topology t = topology(box);
    CHECK(t.genus == 0);
    CHECK(t.boundaries == 1);
    CHECK(t.boundaryLengths[0] == 4);
    CHECK(t.internalFaces == 4);
    CHECK(isPrimitive(box));

    RibbonGraph box2 = primitiveFamily(2);
    CHECK(internalPairs(box2).size() == 14);
    CHECK(topology(box2).internalFaces == 7);
    CHECK(isPrimitive(box2));

    CHECK(isPrimitive(primitiveFamily(3)));
}

TEST_CASE("maxf values of the two-loop 2-point graphs") {
    CHECK(maxf(sunriseGraph()) == 2);
    for (const auto& t : enumerateGraphs({2, 1, EnumFilter::OnePI})) CHECK(maxf(t) == 1);
    for (const auto& f : primitives4(1)) CHECK(maxf(f) == 1);

    // of the four double tadpoles, the two stacked ones (whose two-edge
    // subgraph has two boundaries) have a single maximal forest
    std::vector<long> values;
    for (const auto& g : enumerateGraphs({2, 2, EnumFilter::OnePI})) {
        if (canonicalRooted(g, 1) == canonicalRooted(sunriseGraph(), 1)) continue;
        if (g == sunriseGraph()) continue;
        values.push_back(maxf(g));
    }
    std::sort(values.begin(), values.end());
    CHECK(values == std::vector<long>{1, 1, 2, 2});
}

TEST_CASE("maxf is at least one on sampled generators") {
    for (int nExt : {2, 4})
        for (int loops = 1; loops <= 3; ++loops)
            for (const auto& g : enumerateGraphs({nExt, loops, EnumFilter::OnePI}))
                REQUIRE(maxf(g) >= 1);
}

TEST_CASE("insertion isomorphism counts follow the factorization lemma") {
    // two bare vertices into the fish: 2!·4·4 = 32
    MonomialParts h = materializeMonomial(vertexMonomial(2));
    auto isos = insertionIsomorphisms(h, fishH());
    CHECK(isos.size() == 32);
    CHECK(insertionCountFormula(fishH()) == 32);

    // mismatched residues: nothing to insert
    MonomialParts one = materializeMonomial(vertexMonomial(1));
    CHECK(insertionIsomorphisms(one, fishH()).empty());

    // one bivalent and one 4-valent slot: 1!·1!·2·4 = 8
    RibbonGraph tad = enumerateGraphs({2, 1, EnumFilter::OnePI})[0];
    auto refs = bivalentRefinementsExact(tad, 1);
    REQUIRE(refs.size() == 1);
    GraphMonomial m = vertexMonomial(1) * mono(tad);
    auto isos2 = insertionIsomorphisms(materializeMonomial(m), refs[0]);
    CHECK(isos2.size() == 8);
    CHECK(insertionCountFormula(refs[0]) == 8);
}

TEST_CASE("inserting bare residues returns the host") {
    for (const auto& host : {fishH(), fishV()}) {
        MonomialParts h = materializeMonomial(vertexMonomial(2));
        for (const auto& iota : insertionIsomorphisms(h, host))
            REQUIRE(insertGraph(host, iota, h) == host);
    }
}

TEST_CASE("insertion adds loop numbers") {
    GraphMonomial m = vertexMonomial(1) * mono(fishH());
    MonomialParts h = materializeMonomial(m);
    for (const auto& host : {fishH(), fishV()}) {
        for (const auto& iota : insertionIsomorphisms(h, host)) {
            RibbonGraph g = insertGraph(host, iota, h);
            REQUIRE(topology(g).internalFaces == 2);
            REQUIRE(topology(g).boundaryLengths[0] == 4);
        }
    }
}

TEST_CASE("bivalent refinements follow stars and bars over internal edges") {
    RibbonGraph f = fishH();
    CHECK(bivalentRefinementsExact(f, 0).size() == 1);
    CHECK(bivalentRefinementsExact(f, 1).size() == 2);
    CHECK(bivalentRefinementsExact(f, 2).size() == 3);
    CHECK(bivalentRefinements(f, 1).size() == 3); // fish + two one-dot refinements
    for (const auto& r : bivalentRefinements(f, 2)) REQUIRE(piProject(r) == f);
    RibbonGraph box = primitiveFamily(1);
    CHECK(bivalentRefinementsExact(box, 2).size() == 8 * 9 / 2);
}

TEST_CASE("series arithmetic") {
    SeriesTruncation one = SeriesTruncation::unit(3);
    CHECK(seriesInverse(one) == one);
    SeriesTruncation xe = xSeriesE(3);
    SeriesTruncation invE = seriesInverse(xe);
    CHECK((xe * invE) == one);
    // (1/X^e)² at order one is 2 c^e_1
    SeriesTruncation sq = invE * invE;
    CHECK(sq.at(1) == cCoefficient(2, 1).scaled(Rat(2)));
    // Q at order zero is the bare vertex
    CHECK(qSeries(2).at(0) == GraphPoly::fromMonomial(vertexMonomial(1)));
    CHECK_THROWS_AS(seriesInverse(xSeriesV(2)), std::domain_error);
}

TEST_CASE("grafting the fish with vertex·fish gives the quarter-weighted chains") {
    GraphPoly arg = GraphPoly::fromMonomial(vertexMonomial(1) * mono(fishH()));
    GraphPoly out = graftPoly(fishH(), arg);
    REQUIRE(out.terms.size() == 3);
    int straight = 0;
    for (const auto& [m, c] : out.terms) {
        REQUIRE(c == Rat(1, 4));
        REQUIRE(m.gens.size() == 1);
        const RibbonGraph& g = generatorInfo(m.gens[0].first).graph;
        REQUIRE(topology(g).internalFaces == 2);
        long mf = maxf(g);
        REQUIRE((mf == 1 || mf == 2));
        if (mf == 2) ++straight;
    }
    CHECK(straight == 1); // exactly one straight chain with two maximal forests
}

TEST_CASE("grafting is insensitive to the argument fish orientation") {
    GraphPoly a1 = GraphPoly::fromMonomial(vertexMonomial(1) * mono(fishH()));
    GraphPoly a2 = GraphPoly::fromMonomial(vertexMonomial(1) * mono(fishV()));
    CHECK(graftPoly(fishH(), a1) == graftPoly(fishH(), a2));
    CHECK(graftPoly(fishV(), a1) == graftPoly(fishV(), a2));
}

TEST_CASE("combined vertex-insertion identity at two loops") {
    // B₊ over both one-loop primitives applied to c^v_0·c^v_1 yields half the
    // sum of the six chain graphs
    GraphPoly cv1 = cCoefficient(4, 1);
    GraphPoly v = GraphPoly::fromMonomial(vertexMonomial(1));
    GraphPoly out;
    for (const auto& gamma : primitives4(1)) out = out + graftPoly(gamma, v * cv1);
    REQUIRE(out.terms.size() == 6);
    for (const auto& [m, c] : out.terms) REQUIRE(c == Rat(1, 2));
    // these six are exactly the two-loop 4-point graphs without self-loops
    std::set<std::string> got;
    for (const auto& [m, c] : out.terms) got.insert(m.gens[0].first);
    std::set<std::string> want;
    for (const auto& g : enumerateGraphs({4, 2, EnumFilter::OnePI})) {
        bool selfLoop = false;
        auto cycles = g.sigma.cycles();
        for (const auto& [a, b] : internalPairs(g)) {
            for (const auto& cyc : cycles) {
                bool hasA = std::find(cyc.begin(), cyc.end(), a) != cyc.end();
                bool hasB = std::find(cyc.begin(), cyc.end(), b) != cyc.end();
                if (hasA && hasB) selfLoop = true;
            }
        }
        if (!selfLoop) want.insert(serialize(g));
    }
    CHECK(got == want);
}

TEST_CASE("graft is linear") {
    GraphPoly a = GraphPoly::fromMonomial(vertexMonomial(1) * mono(fishH()));
    GraphPoly b = GraphPoly::fromMonomial(vertexMonomial(1) * mono(fishV()));
    GraphPoly lin = graftPoly(fishH(), a.scaled(Rat(2, 3)) + b.scaled(Rat(-1, 5)));
    GraphPoly sep = graftPoly(fishH(), a).scaled(Rat(2, 3)) + graftPoly(fishH(), b).scaled(Rat(-1, 5));
    CHECK(lin == sep);
}

TEST_CASE("a monomial with no matching refinement contributes zero") {
    // the unit has an empty residue and never matches a host skeleton
    CHECK(graftPoly(fishH(), GraphPoly::unit()).isZero());
    // two 4-point slots cannot fit the single tadpole vertex
    RibbonGraph tad = enumerateGraphs({2, 1, EnumFilter::OnePI})[0];
    CHECK(graftPoly(tad, GraphPoly::fromMonomial(vertexMonomial(2))).isZero());
}

TEST_CASE("graft series bookkeeping adds the primitive loop order") {
    SeriesTruncation arg(2);
    arg.at(0) = GraphPoly::fromMonomial(vertexMonomial(2));
    SeriesTruncation out = graft(fishH(), arg, 2);
    CHECK(out.at(0).isZero());
    CHECK(out.at(1) == polyFromGraph(fishH()));
    CHECK(out.at(2).isZero());
}

TEST_CASE("grafting output is independent of the worker count") {
    GraphPoly cv1 = cCoefficient(4, 1);
    GraphPoly ce1 = cCoefficient(2, 1);
    GraphPoly v = GraphPoly::fromMonomial(vertexMonomial(1));
    GraphPoly arg = v * cv1 + v * v * ce1;
    GraphPoly base = graftPoly(fishH(), arg);
    for (int workers : {2, 3}) {
        GraftOptions opts;
        opts.workers = workers;
        REQUIRE(graftPoly(fishH(), arg, opts) == base);
    }
}

TEST_CASE("dse solve reproduces enumeration with unit coefficients") {
    DseSolution sol = dseSolve(2, 2);
    CHECK(sol.allMatch());
    CHECK(sol.ce[1] == cCoefficient(2, 1));
    CHECK(sol.ce[2] == cCoefficient(2, 2));
    CHECK(sol.cv[1] == cCoefficient(4, 1));
    CHECK(sol.cv[2] == cCoefficient(4, 2));
    for (const auto& rep : sol.report) {
        CHECK(rep.unitCoefficients);
        CHECK(rep.matchesEnumeration);
    }
    CHECK(sol.report[0].graphCount == 2);  // c^e_1
    CHECK(sol.report[1].graphCount == 5);  // c^e_2
    CHECK(sol.report[3].graphCount == 14); // c^v_2
}
