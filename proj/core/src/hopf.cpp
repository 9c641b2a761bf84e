#include "mft/hopf.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>

namespace mft {

namespace {

std::vector<std::pair<std::string, int>> mergeGens(
    const std::vector<std::pair<std::string, int>>& a,
    const std::vector<std::pair<std::string, int>>& b) {
    std::map<std::string, int> m;
    for (const auto& [k, v] : a) m[k] += v;
    for (const auto& [k, v] : b) m[k] += v;
    std::vector<std::pair<std::string, int>> out;
    for (auto& [k, v] : m)
        if (v != 0) out.emplace_back(k, v);
    return out;
}

std::string vertexSerial() { return serialize(bareVertex()); }

} // namespace

GraphMonomial GraphMonomial::operator*(const GraphMonomial& o) const {
    GraphMonomial r;
    r.vertexPower = vertexPower + o.vertexPower;
    r.gens = mergeGens(gens, o.gens);
    return r;
}

std::string GraphMonomial::str() const {
    if (isUnit()) return "1";
    std::ostringstream os;
    bool first = true;
    if (vertexPower != 0) {
        os << "v";
        if (vertexPower != 1) os << "^" << vertexPower;
        first = false;
    }
    for (const auto& [g, m] : gens) {
        if (!first) os << " * ";
        os << "[" << g << "]";
        if (m != 1) os << "^" << m;
        first = false;
    }
    return os.str();
}

GraphMonomial unitMonomial() { return {}; }

GraphMonomial vertexMonomial(long power) {
    GraphMonomial m;
    m.vertexPower = power;
    return m;
}

GraphMonomial generatorMonomial(const std::string& serial) {
    if (serial == vertexSerial()) return vertexMonomial(1);
    GraphMonomial m;
    m.gens.emplace_back(serial, 1);
    return m;
}

GraphPoly GraphPoly::unit() { return fromMonomial(unitMonomial()); }

GraphPoly GraphPoly::fromMonomial(GraphMonomial m, Rat c) {
    GraphPoly p;
    if (c != 0) p.terms.emplace(std::move(m), std::move(c));
    return p;
}

GraphPoly& GraphPoly::add(const GraphMonomial& m, const Rat& c) {
    if (c == 0) return *this;
    auto it = terms.find(m);
    if (it == terms.end()) {
        terms.emplace(m, c);
    } else {
        it->second += c;
        if (it->second == 0) terms.erase(it);
    }
    return *this;
}

GraphPoly GraphPoly::operator+(const GraphPoly& o) const {
    GraphPoly r = *this;
    for (const auto& [m, c] : o.terms) r.add(m, c);
    return r;
}

GraphPoly GraphPoly::operator-(const GraphPoly& o) const {
    GraphPoly r = *this;
    for (const auto& [m, c] : o.terms) r.add(m, -c);
    return r;
}

GraphPoly GraphPoly::operator*(const GraphPoly& o) const {
    GraphPoly r;
    for (const auto& [m1, c1] : terms)
        for (const auto& [m2, c2] : o.terms) r.add(m1 * m2, c1 * c2);
    return r;
}

GraphPoly GraphPoly::scaled(const Rat& c) const {
    GraphPoly r;
    if (c == 0) return r;
    for (const auto& [m, v] : terms) r.terms.emplace(m, v * c);
    return r;
}

std::string GraphPoly::str() const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms) {
        if (!first) os << " + ";
        os << ratToString(c) << "·" << m.str();
        first = false;
    }
    return os.str();
}

TensorPoly TensorPoly::fromPair(GraphMonomial l, GraphMonomial r, Rat c) {
    TensorPoly t;
    if (c != 0) t.terms.emplace(std::pair(std::move(l), std::move(r)), std::move(c));
    return t;
}

TensorPoly& TensorPoly::add(const GraphMonomial& l, const GraphMonomial& r, const Rat& c) {
    if (c == 0) return *this;
    auto key = std::pair(l, r);
    auto it = terms.find(key);
    if (it == terms.end()) {
        terms.emplace(std::move(key), c);
    } else {
        it->second += c;
        if (it->second == 0) terms.erase(it);
    }
    return *this;
}

TensorPoly TensorPoly::operator+(const TensorPoly& o) const {
    TensorPoly r = *this;
    for (const auto& [k, c] : o.terms) r.add(k.first, k.second, c);
    return r;
}

TensorPoly TensorPoly::operator-(const TensorPoly& o) const {
    TensorPoly r = *this;
    for (const auto& [k, c] : o.terms) r.add(k.first, k.second, -c);
    return r;
}

TensorPoly TensorPoly::operator*(const TensorPoly& o) const {
    TensorPoly r;
    for (const auto& [k1, c1] : terms)
        for (const auto& [k2, c2] : o.terms)
            r.add(k1.first * k2.first, k1.second * k2.second, c1 * c2);
    return r;
}

TensorPoly TensorPoly::scaled(const Rat& c) const {
    TensorPoly r;
    if (c == 0) return r;
    for (const auto& [k, v] : terms) r.terms.emplace(k, v * c);
    return r;
}

std::string TensorPoly::str() const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms) {
        if (!first) os << " + ";
        os << ratToString(c) << "·(" << k.first.str() << ") ⊗ (" << k.second.str() << ")";
        first = false;
    }
    return os.str();
}

std::string TensorPoly::toJson() const {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    auto monomialGraphs = [](const GraphMonomial& m) {
        std::vector<std::string> gs;
        for (long i = 0; i < m.vertexPower; ++i) gs.push_back(vertexSerial());
        for (const auto& [g, mult] : m.gens)
            for (int i = 0; i < mult; ++i) gs.push_back(g);
        return gs;
    };
    for (const auto& [k, c] : terms) {
        nlohmann::ordered_json row;
        row["left"] = monomialGraphs(k.first);
        row["right"] = monomialGraphs(k.second);
        row["coeff"] = ratToString(c);
        arr.push_back(std::move(row));
    }
    return arr.dump();
}

TensorPoly tensorOf(const GraphPoly& left, const GraphPoly& right) {
    TensorPoly t;
    for (const auto& [ml, cl] : left.terms)
        for (const auto& [mr, cr] : right.terms) t.add(ml, mr, cl * cr);
    return t;
}

const GeneratorInfo& generatorInfo(const std::string& serial) {
    static std::map<std::string, GeneratorInfo> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(serial);
    if (it != cache.end()) return it->second;
    GeneratorInfo info;
    info.graph = parseGraph(serial);
    Topology t = topology(info.graph);
    info.loops = t.internalFaces;
    info.nExt = t.totalExternalFaces();
    info.vertices = t.vertices;
    info.internalEdges = static_cast<int>(internalPairs(info.graph).size());
    return cache.emplace(serial, std::move(info)).first->second;
}

std::string generatorKey(const RibbonGraph& g, int root) {
    if (g.empty()) return serialize(g);
    if (root == 0) {
        auto ext = externalHalfEdges(g);
        if (ext.empty()) throw std::invalid_argument("generatorKey: closed graph has no root");
        root = ext.front();
    }
    return serialize(canonicalRooted(g, root));
}

long monomialLoops(const GraphMonomial& m) {
    long n = 0;
    for (const auto& [g, mult] : m.gens) n += static_cast<long>(generatorInfo(g).loops) * mult;
    return n;
}

long polyMaxLoops(const GraphPoly& p) {
    long n = 0;
    for (const auto& [m, c] : p.terms) n = std::max(n, monomialLoops(m));
    return n;
}

namespace {

struct Components {
    // one entry per vertex-connected component of the kept pairs; components
    // without any pair are trivial (bare vertices)
    std::vector<std::vector<int>> halfEdges;   // per nontrivial component
    std::vector<std::vector<std::pair<int, int>>> pairs;
    long trivialVertices = 0;
};

Components splitComponents(const RibbonGraph& host, const SubgraphSpec& spec) {
    auto cycles = host.sigma.cycles();
    std::map<int, int> vertexOf; // half-edge -> vertex index
    for (std::size_t i = 0; i < cycles.size(); ++i)
        for (int x : cycles[i]) vertexOf[x] = static_cast<int>(i);
    std::vector<int> parent(cycles.size());
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& [a, b] : spec.pairs) parent[find(vertexOf.at(a))] = find(vertexOf.at(b));

    std::map<int, std::vector<int>> groupVerts;
    for (std::size_t i = 0; i < cycles.size(); ++i)
        groupVerts[find(static_cast<int>(i))].push_back(static_cast<int>(i));

    std::map<int, std::vector<std::pair<int, int>>> groupPairs;
    for (const auto& pr : spec.pairs) groupPairs[find(vertexOf.at(pr.first))].push_back(pr);

    Components comps;
    for (auto& [root, verts] : groupVerts) {
        auto itp = groupPairs.find(root);
        if (itp == groupPairs.end()) {
            comps.trivialVertices += static_cast<long>(verts.size());
            continue;
        }
        std::vector<int> hs;
        for (int v : verts) hs.insert(hs.end(), cycles[v].begin(), cycles[v].end());
        std::sort(hs.begin(), hs.end());
        comps.halfEdges.push_back(std::move(hs));
        std::sort(itp->second.begin(), itp->second.end());
        comps.pairs.push_back(itp->second);
    }
    return comps;
}

RibbonGraph componentGraph(const RibbonGraph& host, const std::vector<int>& hs,
                           const std::vector<std::pair<int, int>>& pairs) {
    std::map<int, int> alpha;
    for (int x : hs) alpha[x] = x;
    for (const auto& [a, b] : pairs) {
        alpha[a] = b;
        alpha[b] = a;
    }
    return RibbonGraph{host.sigma.restrictCycles(hs), Permutation::fromMap(std::move(alpha))};
}

bool admissibleComponent(const RibbonGraph& comp) {
    Topology t = topology(comp);
    if (t.boundaries != 1 || t.genus != 0) return false;
    int n = t.boundaryLengths[0];
    if (n != 2 && n != 4) return false;
    return isBridgeless(comp);
}

} // namespace

bool isAdmissibleSubgraph(const RibbonGraph& host, const SubgraphSpec& spec) {
    Components comps = splitComponents(host, spec);
    for (std::size_t i = 0; i < comps.halfEdges.size(); ++i) {
        RibbonGraph comp = componentGraph(host, comps.halfEdges[i], comps.pairs[i]);
        if (!admissibleComponent(comp)) return false;
    }
    return true;
}

std::vector<SubgraphSpec> admissibleSubgraphs(const RibbonGraph& host) {
    auto pairs = internalPairs(host);
    if (pairs.size() > 24) throw std::invalid_argument("admissibleSubgraphs: too many edges");
    std::vector<SubgraphSpec> out;
    for (std::size_t mask = 0; mask < (1ull << pairs.size()); ++mask) {
        SubgraphSpec spec;
        for (std::size_t i = 0; i < pairs.size(); ++i)
            if (mask & (1ull << i)) spec.pairs.push_back(pairs[i]);
        if (isAdmissibleSubgraph(host, spec)) out.push_back(std::move(spec));
    }
    return out;
}

RibbonGraph piProject(const RibbonGraph& g) {
    std::map<int, int> sigma, alpha;
    for (const auto& [k, v] : g.sigma.mapping()) sigma[k] = v;
    for (const auto& [k, v] : g.alpha.mapping()) alpha[k] = v;
    for (;;) {
        int a = 0, b = 0;
        for (const auto& [k, v] : sigma) {
            if (v != k && sigma.at(v) == k) {
                a = k;
                b = v;
                break;
            }
        }
        if (a == 0) break;
        int x = alpha.at(a), y = alpha.at(b);
        sigma.erase(a);
        sigma.erase(b);
        alpha.erase(a);
        alpha.erase(b);
        if (x == a && y == b) {
            // isolated bivalent vertex: contributes the bare edge, i.e. nothing
        } else if (x == a) {
            alpha[y] = y;
        } else if (y == b) {
            alpha[x] = x;
        } else if (x == b) {
            // bivalent vertex closed on itself: a free loop, drop it
        } else {
            alpha[x] = y;
            alpha[y] = x;
        }
    }
    return RibbonGraph{Permutation::fromMap(std::move(sigma)), Permutation::fromMap(std::move(alpha))};
}

GraphPoly subgraphLeftPoly(const RibbonGraph& host, const SubgraphSpec& spec) {
    Components comps = splitComponents(host, spec);
    GraphPoly out = GraphPoly::fromMonomial(vertexMonomial(comps.trivialVertices));
    for (std::size_t i = 0; i < comps.halfEdges.size(); ++i) {
        RibbonGraph comp = componentGraph(host, comps.halfEdges[i], comps.pairs[i]);
        auto ext = externalHalfEdges(comp);
        GraphPoly factor;
        Rat w(1, static_cast<long>(ext.size()));
        for (int h : ext) factor.add(generatorMonomial(generatorKey(comp, h)), w);
        out = out * factor;
    }
    return out;
}

RibbonGraph cographPi(const RibbonGraph& host, const SubgraphSpec& spec) {
    ContractionResult res = contractPairs(host, spec.pairs);
    if (res.multiTrace)
        throw std::logic_error("cographPi: contraction produced a multi-trace vertex");
    RibbonGraph reduced = piProject(res.graph);
    if (reduced.empty()) return reduced;
    auto ext = externalHalfEdges(host);
    int root = ext.empty() ? 0 : ext.front();
    if (root == 0 || !reduced.sigma.contains(root)) {
        auto re = externalHalfEdges(reduced);
        if (re.empty()) throw std::logic_error("cographPi: no external root available");
        root = re.front();
    }
    return canonicalRooted(reduced, root);
}

TensorPoly coproductGraphUncached(const RibbonGraph& generator) {
    TensorPoly out;
    if (generator.empty()) {
        out.add(unitMonomial(), unitMonomial(), 1);
        return out;
    }
    std::size_t full = internalPairs(generator).size();
    for (const auto& spec : admissibleSubgraphs(generator)) {
        RibbonGraph right = cographPi(generator, spec);
        GraphPoly rightP = right.empty() ? GraphPoly::unit()
                                         : GraphPoly::fromMonomial(generatorMonomial(serialize(right)));
        // the full subgraph is the generator itself; proper components carry
        // no canonical root and enter as their rotation averages
        GraphPoly left = spec.pairs.size() == full
                             ? GraphPoly::fromMonomial(generatorMonomial(serialize(generator)))
                             : subgraphLeftPoly(generator, spec);
        out = out + tensorOf(left, rightP);
    }
    return out;
}

TensorPoly coproductGraph(const RibbonGraph& generator) {
    static std::map<std::string, TensorPoly> cache;
    static std::mutex mu;
    std::string key = serialize(generator);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    TensorPoly value = coproductGraphUncached(generator);
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(std::move(key), std::move(value)).first->second;
}

TensorPoly coproduct(const GraphPoly& x) {
    TensorPoly out;
    for (const auto& [mono, coeff] : x.terms) {
        TensorPoly t = TensorPoly::fromPair(vertexMonomial(mono.vertexPower),
                                            vertexMonomial(mono.vertexPower), 1);
        for (const auto& [serial, mult] : mono.gens) {
            TensorPoly dg = coproductGraph(generatorInfo(serial).graph);
            for (int i = 0; i < mult; ++i) t = t * dg;
        }
        out = out + t.scaled(coeff);
    }
    return out;
}

Rat counit(const GraphPoly& x) {
    Rat r(0);
    for (const auto& [mono, coeff] : x.terms)
        if (mono.isResidue()) r += coeff;
    return r;
}

namespace {

const GraphPoly& antipodeGenerator(const std::string& serial) {
    static std::map<std::string, GraphPoly> cache;
    static std::recursive_mutex mu;
    std::lock_guard<std::recursive_mutex> lock(mu);
    auto it = cache.find(serial);
    if (it != cache.end()) return it->second;

    const GeneratorInfo& info = generatorInfo(serial);
    const RibbonGraph& g = info.graph;
    // S(G)·π(res G) = −Σ_{H⊊G} S(H)·π(G/H)
    GraphPoly sum;
    auto full = internalPairs(g);
    for (const auto& spec : admissibleSubgraphs(g)) {
        if (spec.pairs.size() == full.size()) continue; // H = G
        GraphPoly left = subgraphLeftPoly(g, spec);
        RibbonGraph right = cographPi(g, spec);
        GraphPoly rightP = right.empty() ? GraphPoly::unit()
                                         : GraphPoly::fromMonomial(generatorMonomial(serialize(right)));
        sum = sum + antipode(left) * rightP;
    }
    GraphPoly value = sum.scaled(-1);
    if (info.nExt == 4) value = value * GraphPoly::fromMonomial(vertexMonomial(-1));
    return cache.emplace(serial, std::move(value)).first->second;
}

} // namespace

GraphPoly antipode(const GraphPoly& x) {
    GraphPoly out;
    for (const auto& [mono, coeff] : x.terms) {
        GraphPoly term = GraphPoly::fromMonomial(vertexMonomial(-mono.vertexPower), coeff);
        for (const auto& [serial, mult] : mono.gens) {
            const GraphPoly& sg = antipodeGenerator(serial);
            for (int i = 0; i < mult; ++i) term = term * sg;
        }
        out = out + term;
    }
    return out;
}

GraphPoly convolveSId(const GraphPoly& x) {
    GraphPoly out;
    for (const auto& [mono, coeff] : x.terms) {
        TensorPoly d = coproduct(GraphPoly::fromMonomial(mono, coeff));
        for (const auto& [k, c] : d.terms)
            out = out + antipode(GraphPoly::fromMonomial(k.first)) *
                            GraphPoly::fromMonomial(k.second, c);
    }
    return out;
}

GraphPoly convolveIdS(const GraphPoly& x) {
    GraphPoly out;
    for (const auto& [mono, coeff] : x.terms) {
        TensorPoly d = coproduct(GraphPoly::fromMonomial(mono, coeff));
        for (const auto& [k, c] : d.terms)
            out = out + GraphPoly::fromMonomial(k.first, c) *
                            antipode(GraphPoly::fromMonomial(k.second));
    }
    return out;
}

GraphPoly polyFromGraph(const RibbonGraph& g, Rat coeff) {
    if (g.empty()) return GraphPoly::fromMonomial(unitMonomial(), coeff);
    return GraphPoly::fromMonomial(generatorMonomial(serialize(g)), coeff);
}

} // namespace mft
