#pragma once

#include "mft/permutation.hpp"

#include <string>
#include <utility>
#include <vector>

namespace mft {

// Ribbon graph (H, sigma, alpha): cycles of sigma are oriented vertices,
// alpha is an involution whose 2-cycles are internal edges and whose fixed
// points are external half-edges. The empty graph doubles as the algebra unit.
struct RibbonGraph {
    Permutation sigma;
    Permutation alpha;

    bool empty() const { return sigma.empty(); }
    bool operator==(const RibbonGraph& o) const { return sigma == o.sigma && alpha == o.alpha; }
    bool operator!=(const RibbonGraph& o) const { return !(*this == o); }
    bool operator<(const RibbonGraph& o) const;
};

struct Topology {
    int genus = 0;
    int boundaries = 0;
    std::vector<int> boundaryLengths;
    int internalFaces = 0;
    int vertices = 0;
    int edges = 0; // internal edges plus external legs
    int eulerChi() const { return vertices - edges + internalFaces + totalExternalFaces(); }
    int totalExternalFaces() const {
        int s = 0;
        for (int n : boundaryLengths) s += n;
        return s;
    }
};

// Completed combinatorial map: alpha has no fixed points, one marked root
// half-edge per boundary vertex.
struct DualMap {
    Permutation sigma;
    Permutation alpha;
    std::vector<int> marked;

    bool operator==(const DualMap& o) const {
        return sigma == o.sigma && alpha == o.alpha && marked == o.marked;
    }
};

RibbonGraph makeRibbonGraph(Permutation sigma, Permutation alpha);
RibbonGraph emptyGraph();
// ({1,2,3,4}, (4 3 2 1), id): the bare quartic vertex.
RibbonGraph bareVertex();

std::vector<int> halfEdges(const RibbonGraph& g);
std::vector<int> externalHalfEdges(const RibbonGraph& g);
std::vector<std::pair<int, int>> internalPairs(const RibbonGraph& g);
int vertexCount(const RibbonGraph& g);

// sigma^{-1} ∘ alpha on the open graph; its cycles are internal faces and
// boundaries.
Permutation facePermutation(const RibbonGraph& g);
std::vector<std::vector<int>> boundaryCycles(const RibbonGraph& g);
std::vector<int> boundaryLengths(const RibbonGraph& g);
std::vector<std::vector<int>> internalFaceCycles(const RibbonGraph& g);

Topology topology(const RibbonGraph& g);
bool isConnected(const RibbonGraph& g);
bool isBridgeless(const RibbonGraph& g);

struct ContractionResult {
    RibbonGraph graph;
    bool multiTrace = false;
};

// Shrink the given internal edges. keptPairs must be a subset of the alpha
// pairs; the flag reports a contracted component with more than one boundary.
ContractionResult contractPairs(const RibbonGraph& g,
                                const std::vector<std::pair<int, int>>& keptPairs);
ContractionResult residue(const RibbonGraph& g);
RibbonGraph skeleton(const RibbonGraph& g);

// Relabel so the root becomes 1, its vertex is labelled along sigma^{-1},
// and later vertices are entered from the lowest labelled half-edge.
// Requires a connected graph.
RibbonGraph canonicalRooted(const RibbonGraph& g, int rootHalfEdge);
// Minimum of canonicalRooted over every external half-edge (over every
// half-edge for closed graphs): the unrooted isomorphism-class representative.
RibbonGraph canonicalMin(const RibbonGraph& g);

// Completion: double every external half-edge h with a partner h' = h+offset
// (offset = max label) and close each boundary into a new boundary vertex.
// The root of each boundary vertex is the partner of its lowest external
// half-edge. The empty graph completes to the one-edge map on {1,2}.
DualMap completion(const RibbonGraph& g);
DualMap dual(const DualMap& m);
RibbonGraph decompletion(const DualMap& m);
bool isFullySimple(const DualMap& m);
int completionOffset(const RibbonGraph& g);

struct FaceData {
    // Cycles over the completion's half-edges. External faces come first,
    // ordered along each boundary vertex starting at its root; internal faces
    // follow sorted by least half-edge.
    std::vector<std::vector<int>> cycles;
    std::vector<bool> external;
    int externalCount = 0;
    // completion half-edge -> face index
    std::vector<std::pair<int, int>> faceOf;
    int faceIndexOf(int halfEdge) const;
};
FaceData faces(const RibbonGraph& g);

std::string serialize(const RibbonGraph& g);
RibbonGraph parseGraph(const std::string& text);
std::string toJson(const RibbonGraph& g);

} // namespace mft
