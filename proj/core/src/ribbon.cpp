#include "mft/ribbon.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace mft {

namespace {

std::vector<std::vector<int>> cyclesContaining(const std::vector<std::vector<int>>& cycles,
                                               const std::set<int>& labels, bool want) {
    std::vector<std::vector<int>> out;
    for (const auto& c : cycles) {
        bool hit = std::any_of(c.begin(), c.end(), [&](int x) { return labels.count(x) != 0; });
        if (hit == want) out.push_back(c);
    }
    return out;
}

struct UnionFind {
    std::map<int, int> parent;
    void add(int x) { parent.emplace(x, x); }
    int find(int x) {
        int r = x;
        while (parent[r] != r) r = parent[r];
        while (parent[x] != r) x = std::exchange(parent[x], r);
        return r;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

// vertex id = least label on its sigma cycle
std::map<int, int> vertexOfHalfEdge(const RibbonGraph& g) {
    std::map<int, int> v;
    for (const auto& cyc : g.sigma.cycles()) {
        int id = *std::min_element(cyc.begin(), cyc.end());
        for (int x : cyc) v[x] = id;
    }
    return v;
}

int componentCount(const RibbonGraph& g, const std::vector<std::pair<int, int>>& edges) {
    auto vOf = vertexOfHalfEdge(g);
    UnionFind uf;
    std::set<int> verts;
    for (const auto& [h, vid] : vOf) verts.insert(vid);
    for (int v : verts) uf.add(v);
    for (const auto& [a, b] : edges) uf.unite(vOf.at(a), vOf.at(b));
    std::set<int> roots;
    for (int v : verts) roots.insert(uf.find(v));
    return static_cast<int>(roots.size());
}

} // namespace

bool RibbonGraph::operator<(const RibbonGraph& o) const {
    auto key = [](const RibbonGraph& g) {
        return std::tuple(g.sigma.mapping(), g.alpha.mapping());
    };
    return key(*this) < key(o);
}

RibbonGraph makeRibbonGraph(Permutation sigma, Permutation alpha) {
    if (sigma.domain() != alpha.domain())
        throw std::invalid_argument("ribbon graph: sigma and alpha domains differ");
    if (!alpha.isInvolution())
        throw std::invalid_argument("ribbon graph: alpha is not an involution");
    return RibbonGraph{std::move(sigma), std::move(alpha)};
}

RibbonGraph emptyGraph() { return RibbonGraph{}; }

RibbonGraph bareVertex() {
    std::vector<int> dom{1, 2, 3, 4};
    return RibbonGraph{Permutation::fromCycles(dom, {{4, 3, 2, 1}}), Permutation::identity(dom)};
}

std::vector<int> halfEdges(const RibbonGraph& g) { return g.sigma.domain(); }

std::vector<int> externalHalfEdges(const RibbonGraph& g) {
    std::vector<int> ext;
    for (const auto& [k, v] : g.alpha.mapping())
        if (k == v) ext.push_back(k);
    return ext;
}

std::vector<std::pair<int, int>> internalPairs(const RibbonGraph& g) {
    std::vector<std::pair<int, int>> pairs;
    for (const auto& [k, v] : g.alpha.mapping())
        if (k < v) pairs.emplace_back(k, v);
    return pairs;
}

int vertexCount(const RibbonGraph& g) { return static_cast<int>(g.sigma.cycles().size()); }

Permutation facePermutation(const RibbonGraph& g) {
    return compose(g.sigma.inverse(), g.alpha);
}

std::vector<std::vector<int>> boundaryCycles(const RibbonGraph& g) {
    auto ext = externalHalfEdges(g);
    std::set<int> extSet(ext.begin(), ext.end());
    return cyclesContaining(facePermutation(g).cycles(), extSet, true);
}

std::vector<int> boundaryLengths(const RibbonGraph& g) {
    auto ext = externalHalfEdges(g);
    std::set<int> extSet(ext.begin(), ext.end());
    std::vector<int> lens;
    for (const auto& c : boundaryCycles(g)) {
        int n = 0;
        for (int x : c) n += extSet.count(x) ? 1 : 0;
        lens.push_back(n);
    }
    return lens;
}

std::vector<std::vector<int>> internalFaceCycles(const RibbonGraph& g) {
    auto ext = externalHalfEdges(g);
    std::set<int> extSet(ext.begin(), ext.end());
    return cyclesContaining(facePermutation(g).cycles(), extSet, false);
}

Topology topology(const RibbonGraph& g) {
    if (g.empty()) return Topology{};
    Topology t;
    t.vertices = vertexCount(g);
    auto pairs = internalPairs(g);
    auto ext = externalHalfEdges(g);
    t.edges = static_cast<int>(pairs.size() + ext.size());
    t.internalFaces = static_cast<int>(internalFaceCycles(g).size());
    t.boundaryLengths = boundaryLengths(g);
    t.boundaries = static_cast<int>(t.boundaryLengths.size());
    int chi = t.eulerChi();
    int twoG = 2 - t.boundaries - chi;
    if (twoG < 0 || twoG % 2 != 0)
        throw std::logic_error("non-integer or negative genus: inconsistent graph");
    t.genus = twoG / 2;
    return t;
}

bool isConnected(const RibbonGraph& g) {
    if (g.empty()) return true;
    return componentCount(g, internalPairs(g)) == 1;
}

bool isBridgeless(const RibbonGraph& g) {
    auto pairs = internalPairs(g);
    auto vOf = vertexOfHalfEdge(g);
    int base = componentCount(g, pairs);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (vOf.at(pairs[i].first) == vOf.at(pairs[i].second)) continue; // self-loop
        auto rest = pairs;
        rest.erase(rest.begin() + static_cast<long>(i));
        if (componentCount(g, rest) > base) return false;
    }
    return true;
}

ContractionResult contractPairs(const RibbonGraph& g,
                                const std::vector<std::pair<int, int>>& keptPairs) {
    std::set<int> contracted;
    std::map<int, int> alphaPrime;
    for (int x : halfEdges(g)) alphaPrime[x] = x;
    for (const auto& [a, b] : keptPairs) {
        if (g.alpha.apply(a) != b)
            throw std::invalid_argument("contractPairs: not an alpha pair");
        alphaPrime[a] = b;
        alphaPrime[b] = a;
        contracted.insert(a);
        contracted.insert(b);
    }
    std::vector<int> kept;
    for (int x : halfEdges(g))
        if (!contracted.count(x)) kept.push_back(x);

    // multi-trace detection: a connected component of the subgraph spanned by
    // keptPairs whose own face permutation has more than one boundary
    bool multi = false;
    {
        auto vOf = vertexOfHalfEdge(g);
        UnionFind uf;
        std::set<int> verts;
        for (const auto& [h, vid] : vOf) verts.insert(vid);
        for (int v : verts) uf.add(v);
        for (const auto& [a, b] : keptPairs) uf.unite(vOf.at(a), vOf.at(b));
        std::map<int, std::vector<int>> compHalfEdges;
        for (const auto& [h, vid] : vOf) compHalfEdges[uf.find(vid)].push_back(h);
        Permutation ap = Permutation::fromMap(alphaPrime);
        for (auto& [root, hs] : compHalfEdges) {
            bool nontrivial = std::any_of(hs.begin(), hs.end(),
                                          [&](int x) { return contracted.count(x) != 0; });
            if (!nontrivial) continue;
            RibbonGraph comp{g.sigma.restrictCycles(hs), ap.restrictCycles(hs)};
            if (boundaryCycles(comp).size() > 1) multi = true;
        }
    }

    // alpha'∘sigma restricted to the surviving half-edges; contracting the
    // trivial subgraph is the identity
    Permutation merged = compose(Permutation::fromMap(alphaPrime), g.sigma);
    RibbonGraph out;
    if (!kept.empty())
        out = RibbonGraph{merged.restrictCycles(kept), g.alpha.restrictCycles(kept)};
    return ContractionResult{std::move(out), multi};
}

ContractionResult residue(const RibbonGraph& g) { return contractPairs(g, internalPairs(g)); }

RibbonGraph skeleton(const RibbonGraph& g) {
    return RibbonGraph{g.sigma, Permutation::identity(g.sigma.domain())};
}

RibbonGraph canonicalRooted(const RibbonGraph& g, int rootHalfEdge) {
    if (g.empty()) return g;
    if (!g.sigma.contains(rootHalfEdge))
        throw std::invalid_argument("canonicalRooted: root not a half-edge");
    Permutation sigInv = g.sigma.inverse();
    std::vector<int> order;
    std::map<int, int> newOf;
    auto addVertex = [&](int start) {
        int x = start;
        do {
            newOf[x] = static_cast<int>(order.size()) + 1;
            order.push_back(x);
            x = sigInv.apply(x);
        } while (x != start);
    };
    addVertex(rootHalfEdge);
    for (std::size_t i = 0; i < order.size(); ++i) {
        int partner = g.alpha.apply(order[i]);
        if (!newOf.count(partner)) addVertex(partner);
    }
    if (order.size() != g.sigma.size())
        throw std::invalid_argument("canonicalRooted: graph is not connected");
    std::map<int, int> sig, alp;
    for (int x : halfEdges(g)) {
        sig[newOf.at(x)] = newOf.at(g.sigma.apply(x));
        alp[newOf.at(x)] = newOf.at(g.alpha.apply(x));
    }
    return RibbonGraph{Permutation::fromMap(std::move(sig)), Permutation::fromMap(std::move(alp))};
}

RibbonGraph canonicalMin(const RibbonGraph& g) {
    if (g.empty()) return g;
    std::vector<int> roots = externalHalfEdges(g);
    if (roots.empty()) roots = halfEdges(g);
    bool have = false;
    RibbonGraph best;
    for (int r : roots) {
        RibbonGraph cand = canonicalRooted(g, r);
        if (!have || cand < best) {
            best = cand;
            have = true;
        }
    }
    return best;
}

int completionOffset(const RibbonGraph& g) {
    auto dom = halfEdges(g);
    return dom.empty() ? 0 : dom.back();
}

DualMap completion(const RibbonGraph& g) {
    if (g.empty()) {
        // the bare edge: one-edge map, root 1 (playing 1'), partner 2
        std::vector<int> dom{1, 2};
        Permutation s = Permutation::fromCycles(dom, {{1, 2}});
        return DualMap{s, s, {1}};
    }
    int off = completionOffset(g);
    auto ext = externalHalfEdges(g);
    std::set<int> extSet(ext.begin(), ext.end());

    std::vector<int> dom = halfEdges(g);
    for (int h : ext) dom.push_back(h + off);
    std::sort(dom.begin(), dom.end());

    std::map<int, int> alphaBar;
    for (const auto& [k, v] : g.alpha.mapping())
        alphaBar[k] = (k == v) ? k + off : v;
    for (int h : ext) alphaBar[h + off] = h;

    std::map<int, int> sigmaBar;
    for (const auto& [k, v] : g.sigma.mapping()) sigmaBar[k] = v;
    std::vector<int> marked;
    for (const auto& cyc : boundaryCycles(g)) {
        std::vector<int> bdry;
        for (int x : cyc)
            if (extSet.count(x)) bdry.push_back(x + off);
        for (std::size_t i = 0; i < bdry.size(); ++i)
            sigmaBar[bdry[i]] = bdry[(i + 1) % bdry.size()];
        marked.push_back(*std::min_element(bdry.begin(), bdry.end()));
    }
    std::sort(marked.begin(), marked.end());
    return DualMap{Permutation::fromMap(std::move(sigmaBar)),
                   Permutation::fromMap(std::move(alphaBar)), std::move(marked)};
}

DualMap dual(const DualMap& m) {
    return DualMap{compose(m.alpha, m.sigma), m.alpha, m.marked};
}

RibbonGraph decompletion(const DualMap& m) {
    std::set<int> markedSet(m.marked.begin(), m.marked.end());
    std::set<int> drop;
    for (const auto& cyc : m.sigma.cycles()) {
        bool hasRoot = std::any_of(cyc.begin(), cyc.end(),
                                   [&](int x) { return markedSet.count(x) != 0; });
        if (hasRoot) drop.insert(cyc.begin(), cyc.end());
    }
    std::vector<int> kept;
    for (int x : m.sigma.domain())
        if (!drop.count(x)) kept.push_back(x);
    if (kept.empty()) return emptyGraph();
    std::map<int, int> alpha;
    for (int x : kept) {
        int y = m.alpha.apply(x);
        alpha[x] = drop.count(y) ? x : y;
    }
    return RibbonGraph{m.sigma.restrictCycles(kept), Permutation::fromMap(std::move(alpha))};
}

bool isFullySimple(const DualMap& m) {
    std::set<int> markedSet(m.marked.begin(), m.marked.end());
    Permutation phi = compose(m.sigma.inverse(), m.alpha);
    std::map<int, int> corners; // vertex id -> boundary-face corners
    auto vOf = vertexOfHalfEdge(RibbonGraph{m.sigma, m.sigma}); // only sigma matters
    for (const auto& face : phi.cycles()) {
        bool isBoundary = std::any_of(face.begin(), face.end(),
                                      [&](int x) { return markedSet.count(x) != 0; });
        if (!isBoundary) continue;
        for (int x : face)
            if (++corners[vOf.at(x)] > 1) return false;
    }
    return true;
}

int FaceData::faceIndexOf(int halfEdge) const {
    for (const auto& [h, f] : faceOf)
        if (h == halfEdge) return f;
    throw std::out_of_range("no face for half-edge " + std::to_string(halfEdge));
}

FaceData faces(const RibbonGraph& g) {
    FaceData fd;
    if (g.empty()) return fd;
    DualMap comp = completion(g);
    int off = completionOffset(g);
    Permutation phi = compose(comp.sigma.inverse(), comp.alpha);
    auto all = phi.cycles();

    std::set<int> primes;
    for (int x : comp.sigma.domain())
        if (x > off) primes.insert(x);

    // face index of each prime, to order external faces along the boundary
    std::map<int, std::size_t> faceOfPrime;
    std::vector<bool> isExt(all.size(), false);
    for (std::size_t i = 0; i < all.size(); ++i)
        for (int x : all[i])
            if (primes.count(x)) {
                isExt[i] = true;
                if (!faceOfPrime.count(x)) faceOfPrime[x] = i;
            }

    std::vector<std::size_t> extOrder;
    std::set<std::size_t> seen;
    for (const auto& cyc : comp.sigma.cycles()) {
        bool boundaryVertex = std::all_of(cyc.begin(), cyc.end(),
                                          [&](int x) { return primes.count(x) != 0; });
        if (!boundaryVertex) continue;
        // walk from the root of this boundary vertex
        auto it = std::find_if(cyc.begin(), cyc.end(), [&](int x) {
            return std::find(comp.marked.begin(), comp.marked.end(), x) != comp.marked.end();
        });
        std::size_t start = static_cast<std::size_t>(it - cyc.begin());
        for (std::size_t k = 0; k < cyc.size(); ++k) {
            int p = cyc[(start + k) % cyc.size()];
            std::size_t f = faceOfPrime.at(p);
            if (seen.insert(f).second) extOrder.push_back(f);
        }
    }
    for (std::size_t f : extOrder) {
        fd.cycles.push_back(all[f]);
        fd.external.push_back(true);
    }
    fd.externalCount = static_cast<int>(extOrder.size());
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (isExt[i]) continue;
        fd.cycles.push_back(all[i]);
        fd.external.push_back(false);
    }
    for (std::size_t i = 0; i < fd.cycles.size(); ++i)
        for (int x : fd.cycles[i]) fd.faceOf.emplace_back(x, static_cast<int>(i));
    std::sort(fd.faceOf.begin(), fd.faceOf.end());
    return fd;
}

std::string serialize(const RibbonGraph& g) {
    std::ostringstream os;
    auto dom = halfEdges(g);
    bool contiguous = true;
    for (std::size_t i = 0; i < dom.size(); ++i)
        if (dom[i] != static_cast<int>(i) + 1) contiguous = false;
    os << "H=";
    if (contiguous) {
        os << dom.size();
    } else {
        for (std::size_t i = 0; i < dom.size(); ++i) os << (i ? "," : "") << dom[i];
    }
    os << "; sigma=";
    if (!g.empty()) os << g.sigma.cycleString();
    os << "; alpha=";
    for (const auto& [a, b] : internalPairs(g)) os << '(' << a << ' ' << b << ')';
    os << "; ext=";
    auto ext = externalHalfEdges(g);
    for (std::size_t i = 0; i < ext.size(); ++i) os << (i ? "," : "") << ext[i];
    return os.str();
}

RibbonGraph parseGraph(const std::string& text) {
    std::map<std::string, std::string> fields;
    std::size_t pos = 0;
    int unnamed = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find(';', pos);
        std::string part = text.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
        pos = end == std::string::npos ? text.size() + 1 : end + 1;
        auto eq = part.find('=');
        auto trim = [](std::string s) {
            auto a = s.find_first_not_of(" \t");
            auto b = s.find_last_not_of(" \t");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        if (eq == std::string::npos) {
            if (!trim(part).empty())
                throw std::invalid_argument("bad graph field: " + part);
            ++unnamed;
            continue;
        }
        fields[trim(part.substr(0, eq))] = trim(part.substr(eq + 1));
    }
    if (!fields.count("H")) throw std::invalid_argument("graph text missing H=");
    std::vector<int> dom;
    const std::string& hs = fields["H"];
    if (hs.find(',') == std::string::npos) {
        int n = std::stoi(hs);
        for (int i = 1; i <= n; ++i) dom.push_back(i);
    } else {
        std::istringstream is(hs);
        std::string tok;
        while (std::getline(is, tok, ',')) dom.push_back(std::stoi(tok));
    }
    if (dom.empty()) return emptyGraph();

    auto sigCycles = Permutation::parseCycles(fields.count("sigma") ? fields["sigma"] : "");
    auto alpCycles = Permutation::parseCycles(fields.count("alpha") ? fields["alpha"] : "");
    Permutation sigma = Permutation::fromCycles(dom, sigCycles);
    for (const auto& c : alpCycles)
        if (c.size() > 2)
            throw std::invalid_argument("alpha cycle longer than 2: not an involution");
    Permutation alpha = Permutation::fromCycles(dom, alpCycles);
    RibbonGraph g = makeRibbonGraph(std::move(sigma), std::move(alpha));
    if (fields.count("ext") && !fields["ext"].empty()) {
        std::vector<int> ext;
        std::istringstream is(fields["ext"]);
        std::string tok;
        while (std::getline(is, tok, ',')) ext.push_back(std::stoi(tok));
        std::sort(ext.begin(), ext.end());
        if (ext != externalHalfEdges(g))
            throw std::invalid_argument("ext list disagrees with alpha fixed points");
    }
    return g;
}

std::string toJson(const RibbonGraph& g) {
    nlohmann::ordered_json j;
    j["halfEdges"] = halfEdges(g);
    j["sigmaCycles"] = g.sigma.cycles();
    j["alphaPairs"] = nlohmann::ordered_json::array();
    for (const auto& [a, b] : internalPairs(g)) j["alphaPairs"].push_back({a, b});
    j["ext"] = externalHalfEdges(g);
    if (!g.empty() && isConnected(g)) {
        Topology t = topology(g);
        j["topology"] = {{"genus", t.genus},
                         {"boundaries", t.boundaries},
                         {"boundaryLengths", t.boundaryLengths},
                         {"internalFaces", t.internalFaces},
                         {"vertices", t.vertices},
                         {"edges", t.edges}};
    } else {
        j["topology"] = nullptr;
    }
    return j.dump();
}

} // namespace mft
