#pragma once

#include "mft/rational.hpp"
#include "mft/ribbon.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace mft {

// Commutative monomial over canonical rooted generators. The bare quartic
// vertex is tracked as an integer power; negative powers appear only in
// antipode values (the vertex is group-like, so the antipode lives in the
// localization at it). The empty monomial is the unit; the bare edge is never
// stored (it is the unit).
struct GraphMonomial {
    long vertexPower = 0;
    std::vector<std::pair<std::string, int>> gens; // sorted, multiplicity > 0

    bool isUnit() const { return vertexPower == 0 && gens.empty(); }
    bool isResidue() const { return gens.empty(); }
    GraphMonomial operator*(const GraphMonomial& o) const;
    auto tie() const { return std::pair(vertexPower, std::cref(gens)); }
    bool operator==(const GraphMonomial& o) const {
        return vertexPower == o.vertexPower && gens == o.gens;
    }
    bool operator<(const GraphMonomial& o) const {
        return vertexPower != o.vertexPower ? vertexPower < o.vertexPower : gens < o.gens;
    }
    std::string str() const;
};

GraphMonomial unitMonomial();
GraphMonomial vertexMonomial(long power = 1);
GraphMonomial generatorMonomial(const std::string& serial);

struct GraphPoly {
    std::map<GraphMonomial, Rat> terms;

    static GraphPoly zero() { return {}; }
    static GraphPoly unit();
    static GraphPoly fromMonomial(GraphMonomial m, Rat c = Rat(1));

    bool isZero() const { return terms.empty(); }
    GraphPoly& add(const GraphMonomial& m, const Rat& c);
    GraphPoly operator+(const GraphPoly& o) const;
    GraphPoly operator-(const GraphPoly& o) const;
    GraphPoly operator*(const GraphPoly& o) const;
    GraphPoly scaled(const Rat& c) const;
    bool operator==(const GraphPoly& o) const { return terms == o.terms; }
    std::string str() const;
};

struct TensorPoly {
    std::map<std::pair<GraphMonomial, GraphMonomial>, Rat> terms;

    static TensorPoly zero() { return {}; }
    static TensorPoly fromPair(GraphMonomial l, GraphMonomial r, Rat c = Rat(1));

    bool isZero() const { return terms.empty(); }
    TensorPoly& add(const GraphMonomial& l, const GraphMonomial& r, const Rat& c);
    TensorPoly operator+(const TensorPoly& o) const;
    TensorPoly operator-(const TensorPoly& o) const;
    TensorPoly operator*(const TensorPoly& o) const; // (a⊗b)(c⊗d) = ac⊗bd
    TensorPoly scaled(const Rat& c) const;
    bool operator==(const TensorPoly& o) const { return terms == o.terms; }
    std::string str() const;
    std::string toJson() const;
};

// tensor of two polynomials
TensorPoly tensorOf(const GraphPoly& left, const GraphPoly& right);

// Hopf-algebra generator bookkeeping, memoized by serialization.
struct GeneratorInfo {
    RibbonGraph graph;
    int loops = 0;
    int nExt = 0;
    int vertices = 0;
    int internalEdges = 0;
};
const GeneratorInfo& generatorInfo(const std::string& serial);

// Canonical generator key of a connected graph; the root is external
// half-edge `root` (defaults to the least external half-edge).
std::string generatorKey(const RibbonGraph& g, int root = 0);

long monomialLoops(const GraphMonomial& m);
long polyMaxLoops(const GraphPoly& p);

// A ribbon subgraph of a host graph: the subset of alpha pairs it keeps.
struct SubgraphSpec {
    std::vector<std::pair<int, int>> pairs; // sorted
    bool operator<(const SubgraphSpec& o) const { return pairs < o.pairs; }
};

// Every non-trivial component must be connected, bridgeless, genus 0, single
// boundary of length 2 or 4.
bool isAdmissibleSubgraph(const RibbonGraph& host, const SubgraphSpec& spec);
// All admissible subgraphs including the trivial one and the full graph.
std::vector<SubgraphSpec> admissibleSubgraphs(const RibbonGraph& host);

// Delete bivalent vertices, splicing their two attachments into one edge.
RibbonGraph piProject(const RibbonGraph& g);

// Left coproduct leg: the subgraph as a product of factors, one per
// component. Trivial components contribute vertex powers. A component whose
// externals include the host root is rooted there; any other component has no
// canonical root, so its factor is the average of its rootings over all of
// its external half-edges (the choice-free representative, which is what
// makes the coproduct coassociative on rooted generators).
GraphPoly subgraphLeftPoly(const RibbonGraph& host, const SubgraphSpec& spec);
// Right coproduct leg: π(G/H), rooted at the host root's image; the empty
// graph stands for the contracted-away 2-point residue.
RibbonGraph cographPi(const RibbonGraph& host, const SubgraphSpec& spec);

TensorPoly coproductGraph(const RibbonGraph& generator);
TensorPoly coproduct(const GraphPoly& x);
Rat counit(const GraphPoly& x);
// Antipode in the localization at the bare vertex: S(v) = v^{-1}.
GraphPoly antipode(const GraphPoly& x);

// m ∘ (f ⊗ g) ∘ Δ applied to a polynomial, with f,g ∈ {antipode, identity}.
GraphPoly convolveSId(const GraphPoly& x);
GraphPoly convolveIdS(const GraphPoly& x);

GraphPoly polyFromGraph(const RibbonGraph& g, Rat coeff = Rat(1));

} // namespace mft
