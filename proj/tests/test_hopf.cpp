#include <doctest.h>

#include "mft/dse.hpp"
#include "mft/enumeration.hpp"
#include "mft/hopf.hpp"

#include <random>

using namespace mft;

namespace {

GraphMonomial mono(const RibbonGraph& g) { return generatorMonomial(serialize(g)); }

RibbonGraph fish() {
    return parseGraph("H=8; sigma=(1 4 3 2)(5 8 7 6); alpha=(3 5)(4 8); ext=1,2,6,7");
}

RibbonGraph sunriseGraph() {
    return parseGraph("H=8; sigma=(1 4 3 2)(5 8 7 6); alpha=(2 5)(3 8)(4 7); ext=1,6");
}

// all generators with the given boundary length and loop count
std::vector<RibbonGraph> gens(int nExt, int loops) {
    return enumerateGraphs({nExt, loops, EnumFilter::OnePI});
}

TensorPoly reduced(const RibbonGraph& g) {
    TensorPoly d = coproductGraph(g);
    SubgraphSpec full{internalPairs(g)};
    RibbonGraph resG = cographPi(g, full);
    GraphMonomial resM = resG.empty() ? unitMonomial() : mono(resG);
    GraphMonomial sklM = vertexMonomial(vertexCount(g));
    d.add(mono(g), resM, -1);
    d.add(sklM, mono(g), -1);
    return d;
}

} // namespace

TEST_CASE("admissible subgraphs of the sunrise") {
    RibbonGraph g = sunriseGraph();
    auto specs = admissibleSubgraphs(g);
    // trivial, full, and exactly two proper fish-type subgraphs
    CHECK(specs.size() == 4);
    int proper = 0;
    for (const auto& s : specs)
        if (!s.pairs.empty() && s.pairs.size() < 3) ++proper;
    CHECK(proper == 2);
    // the middle configuration (the two-boundary fish) is excluded
    SubgraphSpec mid{{{2, 5}, {4, 7}}};
    CHECK_FALSE(isAdmissibleSubgraph(g, mid));
}

TEST_CASE("single vertex has only the trivial subgraph") {
    auto specs = admissibleSubgraphs(bareVertex());
    REQUIRE(specs.size() == 1);
    CHECK(specs[0].pairs.empty());
}

TEST_CASE("pi projection splices bivalent vertices") {
    // a single bivalent vertex on an open edge collapses to the bare edge
    RibbonGraph biv = parseGraph("H=2; sigma=(1 2); alpha=; ext=1,2");
    CHECK(piProject(biv).empty());
    // no bivalent vertices: unchanged
    CHECK(piProject(fish()) == fish());
    // a refined tadpole: bivalent vertex on the loop splices back
    RibbonGraph tad = parseGraph("H=4; sigma=(1 4 3 2); alpha=(2 3); ext=1,4");
    auto refs = bivalentRefinementsExact(tad, 1);
    REQUIRE(refs.size() == 1);
    CHECK(piProject(refs[0]) == tad);
    CHECK(vertexCount(refs[0]) == 2);
}

TEST_CASE("the bare vertex is group-like") {
    TensorPoly d = coproductGraph(bareVertex());
    REQUIRE(d.terms.size() == 1);
    CHECK(d.terms.count({vertexMonomial(1), vertexMonomial(1)}) == 1);
}

TEST_CASE("coproduct of the fish has no proper terms") {
    TensorPoly d = coproductGraph(fish());
    // fish ⊗ res + skl ⊗ fish only
    REQUIRE(d.terms.size() == 2);
    CHECK(d.terms.count({mono(fish()), vertexMonomial(1)}) == 1);
    CHECK(d.terms.count({vertexMonomial(2), mono(fish())}) == 1);
}

TEST_CASE("coproduct of a tadpole") {
    RibbonGraph t = gens(2, 1)[0];
    TensorPoly d = coproductGraph(t);
    REQUIRE(d.terms.size() == 2);
    // t ⊗ 1 (the 2-point residue projects away) + v ⊗ t
    CHECK(d.terms.count({mono(t), unitMonomial()}) == 1);
    CHECK(d.terms.count({vertexMonomial(1), mono(t)}) == 1);
}

TEST_CASE("reduced coproduct of c^e_2 is (c^v_1 + c^v_0 c^e_1) ⊗ c^e_1") {
    GraphPoly ce1 = cCoefficient(2, 1);
    GraphPoly cv1 = cCoefficient(4, 1);
    GraphPoly v = GraphPoly::fromMonomial(vertexMonomial(1));
    TensorPoly lhs;
    for (const auto& g : gens(2, 2)) lhs = lhs + reduced(g);
    TensorPoly rhs = tensorOf(cv1 + v * ce1, ce1);
    CHECK(lhs == rhs);
}

TEST_CASE("coproduct grading: left loops + right loops = total loops") {
    for (int nExt : {2, 4}) {
        for (int loops = 1; loops <= 3; ++loops) {
            for (const auto& g : gens(nExt, loops)) {
                for (const auto& [k, c] : coproductGraph(g).terms)
                    REQUIRE(monomialLoops(k.first) + monomialLoops(k.second) == loops);
            }
        }
    }
}

TEST_CASE("contraction closure: right legs stay in the algebra") {
    for (int nExt : {2, 4}) {
        for (int loops = 1; loops <= 3; ++loops) {
            for (const auto& g : gens(nExt, loops)) {
                for (const auto& spec : admissibleSubgraphs(g)) {
                    RibbonGraph co = cographPi(g, spec);
                    if (co.empty()) continue;
                    Topology t = topology(co);
                    REQUIRE(t.genus == 0);
                    REQUIRE(t.boundaries == 1);
                    REQUIRE((t.boundaryLengths[0] == 2 || t.boundaryLengths[0] == 4));
                    REQUIRE(isBridgeless(co));
                    for (const auto& cyc : co.sigma.cycles()) REQUIRE(cyc.size() == 4);
                }
            }
        }
    }
}

TEST_CASE("counit") {
    CHECK(counit(GraphPoly::unit()) == 1);
    CHECK(counit(GraphPoly::fromMonomial(vertexMonomial(3))) == 1);
    CHECK(counit(polyFromGraph(fish())) == 0);
    CHECK(counit(polyFromGraph(fish()) + GraphPoly::unit().scaled(Rat(5))) == 5);
}

TEST_CASE("counit axioms on generators") {
    for (int nExt : {2, 4}) {
        for (const auto& g : gens(nExt, 2)) {
            TensorPoly d = coproductGraph(g);
            GraphPoly left, right;
            for (const auto& [k, c] : d.terms) {
                left = left + GraphPoly::fromMonomial(k.second,
                                                      c * counit(GraphPoly::fromMonomial(k.first)));
                right = right + GraphPoly::fromMonomial(k.first,
                                                        c * counit(GraphPoly::fromMonomial(k.second)));
            }
            REQUIRE(left == polyFromGraph(g));
            REQUIRE(right == polyFromGraph(g));
        }
    }
}

TEST_CASE("coassociativity on all generators up to 3 loops") {
    auto expandLeft = [](const TensorPoly& d) {
        // (Δ ⊗ id) ∘ Δ as a map into ordered triples
        std::map<std::tuple<GraphMonomial, GraphMonomial, GraphMonomial>, Rat> out;
        for (const auto& [k, c] : d.terms) {
            TensorPoly dl = coproduct(GraphPoly::fromMonomial(k.first, c));
            for (const auto& [k2, c2] : dl.terms) {
                auto key = std::tuple(k2.first, k2.second, k.second);
                out[key] += c2;
                if (out[key] == 0) out.erase(key);
            }
        }
        return out;
    };
    auto expandRight = [](const TensorPoly& d) {
        std::map<std::tuple<GraphMonomial, GraphMonomial, GraphMonomial>, Rat> out;
        for (const auto& [k, c] : d.terms) {
            TensorPoly dr = coproduct(GraphPoly::fromMonomial(k.second, c));
            for (const auto& [k2, c2] : dr.terms) {
                auto key = std::tuple(k.first, k2.first, k2.second);
                out[key] += c2;
                if (out[key] == 0) out.erase(key);
            }
        }
        return out;
    };
    for (int nExt : {2, 4}) {
        for (int loops = 1; loops <= 3; ++loops) {
            for (const auto& g : gens(nExt, loops)) {
                TensorPoly d = coproductGraph(g);
                REQUIRE(expandLeft(d) == expandRight(d));
            }
        }
    }
}

TEST_CASE("coproduct is an algebra morphism on random monomial pairs") {
    std::mt19937 rng(41);
    std::vector<RibbonGraph> pool;
    for (int nExt : {2, 4})
        for (int loops = 1; loops <= 2; ++loops)
            for (const auto& g : gens(nExt, loops)) pool.push_back(g);
    for (int trial = 0; trial < 12; ++trial) {
        GraphPoly x = polyFromGraph(pool[rng() % pool.size()]);
        GraphPoly y = polyFromGraph(pool[rng() % pool.size()]);
        CHECK(coproduct(x * y) == coproduct(x) * coproduct(y));
    }
}

TEST_CASE("antipode fixes the unit and inverts the vertex") {
    CHECK(antipode(GraphPoly::unit()) == GraphPoly::unit());
    CHECK(antipode(GraphPoly::fromMonomial(vertexMonomial(1))) ==
          GraphPoly::fromMonomial(vertexMonomial(-1)));
}

TEST_CASE("antipode of a primitive 2-point graph") {
    RibbonGraph t = gens(2, 1)[0];
    // S(t) = -v^{-1}·t in the localization at the group-like bare vertex
    GraphPoly expect = GraphPoly::fromMonomial(vertexMonomial(-1) * mono(t), Rat(-1));
    CHECK(antipode(polyFromGraph(t)) == expect);
}

TEST_CASE("both antipode identities on every generator up to 3 loops") {
    for (int nExt : {2, 4}) {
        for (int loops = 1; loops <= 3; ++loops) {
            for (const auto& g : gens(nExt, loops)) {
                GraphPoly x = polyFromGraph(g);
                REQUIRE(convolveSId(x).isZero()); // ε(G) = 0 for non-residues
                REQUIRE(convolveIdS(x).isZero());
            }
        }
    }
    // and on residues the convolution returns the unit
    GraphPoly v = GraphPoly::fromMonomial(vertexMonomial(1));
    CHECK(convolveSId(v) == GraphPoly::unit());
    CHECK(convolveIdS(v) == GraphPoly::unit());
}

TEST_CASE("tensor product rule (a⊗b)(c⊗d) = ac⊗bd") {
    RibbonGraph t = gens(2, 1)[0];
    TensorPoly ab = TensorPoly::fromPair(mono(fish()), unitMonomial(), Rat(2));
    TensorPoly cd = TensorPoly::fromPair(vertexMonomial(1), mono(t), Rat(1, 3));
    TensorPoly prod = ab * cd;
    REQUIRE(prod.terms.size() == 1);
    CHECK(prod.terms.begin()->second == Rat(2, 3));
    CHECK(prod.terms.begin()->first.first == mono(fish()) * vertexMonomial(1));
    CHECK(prod.terms.begin()->first.second == mono(t));
}

TEST_CASE("tensor JSON export shape") {
    TensorPoly d = coproductGraph(fish());
    std::string j = d.toJson();
    CHECK(j.find("\"left\"") != std::string::npos);
    CHECK(j.find("\"right\"") != std::string::npos);
    CHECK(j.find("\"coeff\"") != std::string::npos);
}
