#pragma once

#include "mft/enumeration.hpp"
#include "mft/hopf.hpp"

#include <vector>

namespace mft {

// --- primitives and forests ---

// No proper admissible subgraph with a non-trivial component.
bool isPrimitive(const RibbonGraph& g);

// m-th member of the wheel-chain family of primitive 4-point graphs:
// m central vertices, an outer ring of 2m+2 vertices, legs at the corners.
RibbonGraph primitiveFamily(int m);

// Number of subgraphs H ⊊ G (including the trivial skeleton) whose
// π-projected cograph is primitive.
long maxf(const RibbonGraph& g);

// --- insertion ---

// A concrete disjoint-union realization of a monomial, one entry per
// component (vertex powers become bare vertices).
struct MonomialParts {
    RibbonGraph graph;                    // disjoint union
    std::vector<std::vector<int>> residueCycles; // σ-order residue cycle per component
};
MonomialParts materializeMonomial(const GraphMonomial& m);

// ι: residue half-edges of H -> half-edges of the host, intertwining the
// vertex permutations.
using Insertion = std::map<int, int>;
std::vector<Insertion> insertionIsomorphisms(const MonomialParts& h, const RibbonGraph& host);
long insertionCountFormula(const RibbonGraph& host); // Π_k V^(k)! k^{V^(k)}

// Wire the components of h into the host along ι; the result is rooted at
// ι^{-1}(host root).
RibbonGraph insertGraph(const RibbonGraph& host, const Insertion& iota, const MonomialParts& h);

// All graphs with exactly `dots` bivalent vertices distributed over the
// internal edges of gamma (π of each refinement is gamma).
std::vector<RibbonGraph> bivalentRefinementsExact(const RibbonGraph& gamma, int dots);
// All refinements with at most `budget` bivalent vertices.
std::vector<RibbonGraph> bivalentRefinements(const RibbonGraph& gamma, int budget);

// --- loop-graded series of graph polynomials ---

struct SeriesTruncation {
    int maxLoops = 0;
    std::vector<GraphPoly> coeff; // indexed by loop order, size maxLoops+1

    explicit SeriesTruncation(int n = 0) : maxLoops(n), coeff(static_cast<std::size_t>(n) + 1) {}
    static SeriesTruncation unit(int n);
    GraphPoly& at(int k) { return coeff.at(static_cast<std::size_t>(k)); }
    const GraphPoly& at(int k) const { return coeff.at(static_cast<std::size_t>(k)); }

    SeriesTruncation operator+(const SeriesTruncation& o) const;
    SeriesTruncation operator-(const SeriesTruncation& o) const;
    SeriesTruncation operator*(const SeriesTruncation& o) const;
    SeriesTruncation pow(int e) const;
    bool operator==(const SeriesTruncation& o) const;
};

// Geometric inverse; requires the loop-0 coefficient to be the unit.
SeriesTruncation seriesInverse(const SeriesTruncation& x);

// Sum of all enumerated 1PI graphs at the given loop order, unit coefficients.
GraphPoly cCoefficient(int nExt, int loops, const EnumOptions& opts = {});
// X^e = 1 - Σ α^j c^e_j ; X^v = Σ α^j c^v_j, from enumeration.
SeriesTruncation xSeriesE(int maxLoops, const EnumOptions& opts = {});
SeriesTruncation xSeriesV(int maxLoops, const EnumOptions& opts = {});
SeriesTruncation qSeries(int maxLoops, const EnumOptions& opts = {});

// All primitive 4-point graphs at the given loop order.
std::vector<RibbonGraph> primitives4(int loops, const EnumOptions& opts = {});

// --- grafting ---

struct GraftOptions {
    int workers = 1;
    EnumOptions enumOpts;
};

// B₊ of a single primitive applied to one loop-homogeneous polynomial.
GraphPoly graftPoly(const RibbonGraph& gamma, const GraphPoly& arg,
                    const GraftOptions& opts = {});
// B₊ applied to a series, truncated at N loops.
SeriesTruncation graft(const RibbonGraph& gamma, const SeriesTruncation& arg, int N,
                       const GraftOptions& opts = {});

// --- the combinatorial Dyson-Schwinger recursion ---

struct DseOrderReport {
    int order = 0;
    char kind = 'e';
    long graphCount = 0;
    bool unitCoefficients = false;
    bool matchesEnumeration = false;
    std::vector<std::string> serials;
};

struct DseSolution {
    std::vector<GraphPoly> ce; // ce[0] = unit
    std::vector<GraphPoly> cv; // cv[0] = bare vertex
    std::vector<DseOrderReport> report;
    bool allMatch() const {
        for (const auto& r : report)
            if (!(r.unitCoefficients && r.matchesEnumeration)) return false;
        return true;
    }
};

// Solve order by order up to eMax for the 2-point series and vMax for the
// 4-point series, cross-checking each coefficient against enumeration.
DseSolution dseSolve(int eMax, int vMax, const GraftOptions& opts = {});

} // namespace mft
