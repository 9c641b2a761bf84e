#include "mft/dse.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace mft {

namespace {

// Dense-array scan: a proper non-empty edge subset forming one connected
// component that is a divergent admissible subgraph disqualifies primitivity.
bool computePrimitive(const RibbonGraph& g) {
    auto pairs = internalPairs(g);
    std::size_t n = pairs.size();
    if (n > 24) throw std::invalid_argument("isPrimitive: too many edges");
    if (n == 0) return true;

    auto dom = halfEdges(g);
    std::map<int, int> idx;
    for (std::size_t i = 0; i < dom.size(); ++i) idx[dom[i]] = static_cast<int>(i);
    int H = static_cast<int>(dom.size());
    std::vector<int> sigInv(H), vOf(H, -1);
    Permutation si = g.sigma.inverse();
    for (int i = 0; i < H; ++i) sigInv[i] = idx.at(si.apply(dom[static_cast<std::size_t>(i)]));
    int V = 0;
    for (const auto& cyc : g.sigma.cycles()) {
        for (int x : cyc) vOf[static_cast<std::size_t>(idx.at(x))] = V;
        ++V;
    }
    std::vector<std::pair<int, int>> pe(n);
    for (std::size_t i = 0; i < n; ++i)
        pe[i] = {idx.at(pairs[i].first), idx.at(pairs[i].second)};

    std::vector<int> parent(static_cast<std::size_t>(V));
    std::vector<int> alphaPrime(static_cast<std::size_t>(H));
    std::vector<char> inComp(static_cast<std::size_t>(H));
    std::vector<char> seen(static_cast<std::size_t>(H));
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x)
            x = parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        return x;
    };

    for (std::size_t mask = 1; mask < (1ull << n) - 1; ++mask) {
        int edges = 0;
        std::iota(parent.begin(), parent.end(), 0);
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1ull << i)) {
                ++edges;
                parent[static_cast<std::size_t>(find(vOf[static_cast<std::size_t>(pe[i].first)]))] =
                    find(vOf[static_cast<std::size_t>(pe[i].second)]);
            }
        // single component on exactly the touched vertices
        int root = find(vOf[static_cast<std::size_t>(pe[static_cast<std::size_t>(
            __builtin_ctzll(mask))].first)]);
        int compV = 0;
        for (int v = 0; v < V; ++v) compV += find(v) == root ? 1 : 0;
        int touched = 0;
        {
            std::vector<char> tv(static_cast<std::size_t>(V), 0);
            for (std::size_t i = 0; i < n; ++i)
                if (mask & (1ull << i)) {
                    tv[static_cast<std::size_t>(vOf[static_cast<std::size_t>(pe[i].first)])] = 1;
                    tv[static_cast<std::size_t>(vOf[static_cast<std::size_t>(pe[i].second)])] = 1;
                }
            for (int v = 0; v < V; ++v) touched += tv[static_cast<std::size_t>(v)];
        }
        if (touched != compV) continue; // more than one non-trivial component
        int nExt = 4 * compV - 2 * edges;
        if (nExt != 2 && nExt != 4) continue;

        // faces of the component
        std::fill(inComp.begin(), inComp.end(), 0);
        for (int h = 0; h < H; ++h)
            if (find(vOf[static_cast<std::size_t>(h)]) == root) inComp[static_cast<std::size_t>(h)] = 1;
        std::iota(alphaPrime.begin(), alphaPrime.end(), 0);
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1ull << i)) {
                alphaPrime[static_cast<std::size_t>(pe[i].first)] = pe[i].second;
                alphaPrime[static_cast<std::size_t>(pe[i].second)] = pe[i].first;
            }
        std::fill(seen.begin(), seen.end(), 0);
        int boundaries = 0, internalFaces = 0;
        for (int s = 0; s < H; ++s) {
            if (!inComp[static_cast<std::size_t>(s)] || seen[static_cast<std::size_t>(s)]) continue;
            bool ext = false;
            int x = s;
            do {
                seen[static_cast<std::size_t>(x)] = 1;
                int ax = alphaPrime[static_cast<std::size_t>(x)];
                ext = ext || ax == x;
                x = sigInv[static_cast<std::size_t>(ax)];
            } while (x != s);
            ++(ext ? boundaries : internalFaces);
        }
        if (boundaries != 1) continue;
        if (internalFaces != 1 - compV + edges) continue; // genus zero

        // bridgeless within the component
        bool bridge = false;
        for (std::size_t skip = 0; skip < n && !bridge; ++skip) {
            if (!(mask & (1ull << skip))) continue;
            int a = vOf[static_cast<std::size_t>(pe[skip].first)];
            int b = vOf[static_cast<std::size_t>(pe[skip].second)];
            if (a == b) continue;
            std::iota(parent.begin(), parent.end(), 0);
            for (std::size_t i = 0; i < n; ++i)
                if (i != skip && (mask & (1ull << i)))
                    parent[static_cast<std::size_t>(
                        find(vOf[static_cast<std::size_t>(pe[i].first)]))] =
                        find(vOf[static_cast<std::size_t>(pe[i].second)]);
            if (find(a) != find(b)) bridge = true;
        }
        if (!bridge) return false; // admissible divergent subgraph found
    }
    return true;
}

} // namespace

bool isPrimitive(const RibbonGraph& g) {
    static std::map<std::string, bool> cache;
    static std::mutex mu;
    std::string key = serialize(g);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    bool value = computePrimitive(g);
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(std::move(key), value);
    return value;
}

RibbonGraph primitiveFamily(int m) {
    if (m < 1) throw std::invalid_argument("primitiveFamily: m >= 1");
    // vertices with plane coordinates; sigma cycles are counter-clockwise
    struct V {
        double x, y;
        std::vector<std::pair<double, int>> darts; // angle, half-edge
    };
    std::map<std::string, int> id;
    std::vector<V> verts;
    auto vertex = [&](const std::string& name, double x, double y) {
        auto it = id.find(name);
        if (it != id.end()) return it->second;
        id[name] = static_cast<int>(verts.size());
        verts.push_back(V{x, y, {}});
        return id[name];
    };
    auto TL = vertex("TL", 0, 1), BL = vertex("BL", 0, -1);
    std::vector<int> T{TL}, B{BL};
    for (int i = 1; i < m; ++i) {
        T.push_back(vertex("T" + std::to_string(i), 2.0 * i, 1));
        B.push_back(vertex("B" + std::to_string(i), 2.0 * i, -1));
    }
    T.push_back(vertex("TR", 2.0 * m, 1));
    B.push_back(vertex("BR", 2.0 * m, -1));
    std::vector<int> C;
    for (int i = 1; i <= m; ++i) C.push_back(vertex("C" + std::to_string(i), 2.0 * i - 1, 0));

    int nextHalf = 1;
    std::vector<std::pair<int, int>> pairs;
    std::vector<int> externals;
    auto addDart = [&](int v, double tx, double ty) {
        int h = nextHalf++;
        double ang = std::atan2(ty - verts[static_cast<std::size_t>(v)].y,
                                tx - verts[static_cast<std::size_t>(v)].x);
        verts[static_cast<std::size_t>(v)].darts.emplace_back(ang, h);
        return h;
    };
    auto edge = [&](int a, int b) {
        int ha = addDart(a, verts[static_cast<std::size_t>(b)].x, verts[static_cast<std::size_t>(b)].y);
        int hb = addDart(b, verts[static_cast<std::size_t>(a)].x, verts[static_cast<std::size_t>(a)].y);
        pairs.emplace_back(ha, hb);
    };
    auto leg = [&](int v, double tx, double ty) { externals.push_back(addDart(v, tx, ty)); };

    // outer ring
    edge(TL, BL);
    for (std::size_t i = 0; i + 1 < B.size(); ++i) edge(B[i], B[i + 1]);
    edge(B.back(), T.back());
    for (std::size_t i = T.size(); i-- > 1;) edge(T[i], T[i - 1]);
    // spokes
    for (int i = 1; i <= m; ++i) {
        edge(C[static_cast<std::size_t>(i - 1)], T[static_cast<std::size_t>(i - 1)]);
        edge(C[static_cast<std::size_t>(i - 1)], B[static_cast<std::size_t>(i - 1)]);
        edge(C[static_cast<std::size_t>(i - 1)], B[static_cast<std::size_t>(i)]);
        edge(C[static_cast<std::size_t>(i - 1)], T[static_cast<std::size_t>(i)]);
    }
    // legs at the four corners
    leg(TL, -1, 2);
    leg(BL, -1, -2);
    leg(B.back(), 2.0 * m + 1, -2);
    leg(T.back(), 2.0 * m + 1, 2);

    std::map<int, int> sigma, alpha;
    for (auto& v : verts) {
        std::sort(v.darts.begin(), v.darts.end());
        // counter-clockwise order read off ascending angle; sigma^{-1} follows
        // the counter-clockwise order, so sigma steps backwards through it
        for (std::size_t i = 0; i < v.darts.size(); ++i) {
            int from = v.darts[i].second;
            int to = v.darts[(i + v.darts.size() - 1) % v.darts.size()].second;
            sigma[from] = to;
        }
    }
    for (int h = 1; h < nextHalf; ++h) alpha[h] = h;
    for (const auto& [a, b] : pairs) {
        alpha[a] = b;
        alpha[b] = a;
    }
    RibbonGraph g{Permutation::fromMap(std::move(sigma)), Permutation::fromMap(std::move(alpha))};
    Topology t = topology(g);
    if (t.genus != 0 || t.boundaries != 1 || t.boundaryLengths[0] != 4)
        throw std::logic_error("primitiveFamily: construction lost planarity");
    return canonicalRooted(g, externalHalfEdges(g).front());
}

long maxf(const RibbonGraph& g) {
    static std::map<std::string, long> cache;
    static std::mutex mu;
    std::string key = serialize(g);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto pairs = internalPairs(g);
    long count = 0;
    for (const auto& spec : admissibleSubgraphs(g)) {
        if (spec.pairs.size() == pairs.size()) continue; // proper subgraphs only
        RibbonGraph co = cographPi(g, spec);
        if (!co.empty() && isPrimitive(co)) ++count;
    }
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(std::move(key), count);
    return count;
}

MonomialParts materializeMonomial(const GraphMonomial& m) {
    if (m.vertexPower < 0)
        throw std::invalid_argument("materializeMonomial: negative vertex power");
    MonomialParts parts;
    std::map<int, int> sigma, alpha;
    int offset = 0;
    auto addComponent = [&](const RibbonGraph& comp) {
        for (const auto& [k, v] : comp.sigma.mapping()) sigma[k + offset] = v + offset;
        for (const auto& [k, v] : comp.alpha.mapping()) alpha[k + offset] = v + offset;
        ContractionResult res = residue(comp);
        auto cycles = res.graph.sigma.cycles();
        if (cycles.size() != 1)
            throw std::logic_error("materializeMonomial: component residue not a single vertex");
        std::vector<int> cyc;
        int x = cycles[0][0];
        do {
            cyc.push_back(x + offset);
            x = res.graph.sigma.apply(x);
        } while (x != cycles[0][0]);
        parts.residueCycles.push_back(std::move(cyc));
        offset += halfEdges(comp).empty() ? 0 : halfEdges(comp).back();
    };
    for (long i = 0; i < m.vertexPower; ++i) addComponent(bareVertex());
    for (const auto& [serial, mult] : m.gens)
        for (int i = 0; i < mult; ++i) addComponent(generatorInfo(serial).graph);
    parts.graph =
        RibbonGraph{Permutation::fromMap(std::move(sigma)), Permutation::fromMap(std::move(alpha))};
    return parts;
}

long insertionCountFormula(const RibbonGraph& host) {
    std::map<std::size_t, long> byDegree;
    for (const auto& cyc : host.sigma.cycles()) byDegree[cyc.size()]++;
    long total = 1;
    for (const auto& [deg, cnt] : byDegree) {
        total *= toLong(factorialRat(cnt));
        for (long i = 0; i < cnt; ++i) total *= static_cast<long>(deg);
    }
    return total;
}

std::vector<Insertion> insertionIsomorphisms(const MonomialParts& h, const RibbonGraph& host) {
    // host vertices in sigma order
    std::vector<std::vector<int>> hostCycles;
    for (const auto& cyc : host.sigma.cycles()) {
        std::vector<int> c;
        int x = cyc[0];
        do {
            c.push_back(x);
            x = host.sigma.apply(x);
        } while (x != cyc[0]);
        hostCycles.push_back(std::move(c));
    }
    if (hostCycles.size() != h.residueCycles.size()) return {};
    std::map<std::size_t, std::vector<std::size_t>> hostByDeg, compByDeg;
    for (std::size_t i = 0; i < hostCycles.size(); ++i)
        hostByDeg[hostCycles[i].size()].push_back(i);
    for (std::size_t i = 0; i < h.residueCycles.size(); ++i)
        compByDeg[h.residueCycles[i].size()].push_back(i);
    if (hostByDeg.size() != compByDeg.size()) return {};
    for (const auto& [deg, v] : hostByDeg) {
        auto it = compByDeg.find(deg);
        if (it == compByDeg.end() || it->second.size() != v.size()) return {};
    }

    std::vector<Insertion> out;
    // assignment per degree class: permutations × rotations
    std::function<void(std::map<std::size_t, std::vector<std::size_t>>::iterator, Insertion&)> rec =
        [&](auto degIt, Insertion& acc) {
            if (degIt == hostByDeg.end()) {
                out.push_back(acc);
                return;
            }
            const auto& hostIdx = degIt->second;
            const auto& compIdx = compByDeg.at(degIt->first);
            std::vector<std::size_t> perm(compIdx);
            std::sort(perm.begin(), perm.end());
            do {
                // rotations per matched pair
                std::size_t k = degIt->first;
                std::vector<std::size_t> rot(hostIdx.size(), 0);
                for (;;) {
                    Insertion trial = acc;
                    for (std::size_t i = 0; i < hostIdx.size(); ++i) {
                        const auto& hostCyc = hostCycles[hostIdx[i]];
                        const auto& resCyc = h.residueCycles[perm[i]];
                        for (std::size_t j = 0; j < k; ++j)
                            trial[resCyc[j]] = hostCyc[(j + rot[i]) % k];
                    }
                    auto next = std::next(degIt);
                    rec(next, trial);
                    // odometer over rotations
                    std::size_t pos = 0;
                    while (pos < rot.size()) {
                        if (++rot[pos] < k) break;
                        rot[pos] = 0;
                        ++pos;
                    }
                    if (pos == rot.size()) break;
                }
            } while (std::next_permutation(perm.begin(), perm.end()));
        };
    Insertion acc;
    rec(hostByDeg.begin(), acc);
    return out;
}

RibbonGraph insertGraph(const RibbonGraph& host, const Insertion& iota, const MonomialParts& h) {
    std::map<int, int> inv;
    for (const auto& [r, w] : iota) inv[w] = r;
    std::map<int, int> alpha;
    for (const auto& [x, y] : h.graph.alpha.mapping()) alpha[x] = y;
    for (const auto& [r, w] : iota) {
        int img = host.alpha.apply(w);
        alpha[r] = inv.at(img);
    }
    RibbonGraph g{h.graph.sigma, Permutation::fromMap(std::move(alpha))};
    auto hostExt = externalHalfEdges(host);
    if (hostExt.empty()) throw std::logic_error("insertGraph: host has no external root");
    return canonicalRooted(g, inv.at(hostExt.front()));
}

std::vector<RibbonGraph> bivalentRefinementsExact(const RibbonGraph& gamma, int dots) {
    auto pairs = internalPairs(gamma);
    std::vector<RibbonGraph> out;
    std::vector<int> dist(pairs.size(), 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t slot, int left) {
        if (slot + 1 == pairs.size() || pairs.empty()) {
            if (!pairs.empty()) dist[slot] = left;
            if (pairs.empty() && left > 0) return;
            // build the refinement
            int next = halfEdges(gamma).empty() ? 1 : halfEdges(gamma).back() + 1;
            std::map<int, int> sigma, alpha;
            for (const auto& [k, v] : gamma.sigma.mapping()) sigma[k] = v;
            for (const auto& [k, v] : gamma.alpha.mapping()) alpha[k] = v;
            for (std::size_t i = 0; i < pairs.size(); ++i) {
                auto [a, b] = pairs[i];
                int prev = a;
                for (int d = 0; d < dist[i]; ++d) {
                    int x = next++, y = next++;
                    sigma[x] = y;
                    sigma[y] = x;
                    alpha[prev] = x;
                    alpha[x] = prev;
                    prev = y;
                }
                alpha[prev] = b;
                alpha[b] = prev;
            }
            out.push_back(RibbonGraph{Permutation::fromMap(std::move(sigma)),
                                      Permutation::fromMap(std::move(alpha))});
            return;
        }
        for (int d = 0; d <= left; ++d) {
            dist[slot] = d;
            rec(slot + 1, left - d);
        }
    };
    if (pairs.empty()) {
        if (dots == 0) out.push_back(gamma);
        return out;
    }
    rec(0, dots);
    return out;
}

std::vector<RibbonGraph> bivalentRefinements(const RibbonGraph& gamma, int budget) {
    std::vector<RibbonGraph> out;
    for (int d = 0; d <= budget; ++d) {
        auto part = bivalentRefinementsExact(gamma, d);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

SeriesTruncation SeriesTruncation::unit(int n) {
    SeriesTruncation s(n);
    s.at(0) = GraphPoly::unit();
    return s;
}

SeriesTruncation SeriesTruncation::operator+(const SeriesTruncation& o) const {
    SeriesTruncation r(std::min(maxLoops, o.maxLoops));
    for (int k = 0; k <= r.maxLoops; ++k) r.at(k) = at(k) + o.at(k);
    return r;
}

SeriesTruncation SeriesTruncation::operator-(const SeriesTruncation& o) const {
    SeriesTruncation r(std::min(maxLoops, o.maxLoops));
    for (int k = 0; k <= r.maxLoops; ++k) r.at(k) = at(k) - o.at(k);
    return r;
}

SeriesTruncation SeriesTruncation::operator*(const SeriesTruncation& o) const {
    SeriesTruncation r(std::min(maxLoops, o.maxLoops));
    for (int i = 0; i <= r.maxLoops; ++i) {
        if (at(i).isZero()) continue;
        for (int j = 0; i + j <= r.maxLoops; ++j) {
            if (o.at(j).isZero()) continue;
            r.at(i + j) = r.at(i + j) + at(i) * o.at(j);
        }
    }
    return r;
}

SeriesTruncation SeriesTruncation::pow(int e) const {
    SeriesTruncation r = unit(maxLoops);
    for (int i = 0; i < e; ++i) r = r * (*this);
    return r;
}

bool SeriesTruncation::operator==(const SeriesTruncation& o) const {
    if (maxLoops != o.maxLoops) return false;
    for (int k = 0; k <= maxLoops; ++k)
        if (!(at(k) == o.at(k))) return false;
    return true;
}

SeriesTruncation seriesInverse(const SeriesTruncation& x) {
    if (!(x.at(0) == GraphPoly::unit()))
        throw std::domain_error("seriesInverse: leading term is not the unit");
    SeriesTruncation r(x.maxLoops);
    r.at(0) = GraphPoly::unit();
    for (int n = 1; n <= x.maxLoops; ++n) {
        GraphPoly s;
        for (int k = 1; k <= n; ++k) s = s + x.at(k) * r.at(n - k);
        r.at(n) = GraphPoly::zero() - s;
    }
    return r;
}

GraphPoly cCoefficient(int nExt, int loops, const EnumOptions& opts) {
    if (loops == 0) {
        return nExt == 2 ? GraphPoly::unit() : GraphPoly::fromMonomial(vertexMonomial(1));
    }
    GraphPoly p;
    for (const auto& g : enumerateGraphs(EnumKey{nExt, loops, EnumFilter::OnePI}, opts))
        p.add(generatorMonomial(serialize(g)), 1);
    return p;
}

SeriesTruncation xSeriesE(int maxLoops, const EnumOptions& opts) {
    SeriesTruncation s(maxLoops);
    s.at(0) = GraphPoly::unit();
    for (int k = 1; k <= maxLoops; ++k) s.at(k) = GraphPoly::zero() - cCoefficient(2, k, opts);
    return s;
}

SeriesTruncation xSeriesV(int maxLoops, const EnumOptions& opts) {
    SeriesTruncation s(maxLoops);
    for (int k = 0; k <= maxLoops; ++k) s.at(k) = cCoefficient(4, k, opts);
    return s;
}

SeriesTruncation qSeries(int maxLoops, const EnumOptions& opts) {
    SeriesTruncation invE = seriesInverse(xSeriesE(maxLoops, opts));
    return xSeriesV(maxLoops, opts) * invE * invE;
}

std::vector<RibbonGraph> primitives4(int loops, const EnumOptions& opts) {
    std::vector<RibbonGraph> out;
    for (const auto& g : enumerateGraphs(EnumKey{4, loops, EnumFilter::OnePI}, opts))
        if (isPrimitive(g)) out.push_back(g);
    return out;
}

namespace {

GraphPoly graftMonomial(const RibbonGraph& gamma, const GraphMonomial& mono, const Rat& coeff) {
    GraphPoly out;
    int twoPoint = 0;
    for (const auto& [serial, mult] : mono.gens)
        if (generatorInfo(serial).nExt == 2) twoPoint += mult;
    MonomialParts parts = materializeMonomial(mono);
    auto hosts = bivalentRefinementsExact(gamma, twoPoint);
    if (hosts.empty()) return out;
    // A monomial coefficient in Q^F X^• already counts the ways of
    // distributing its 2-point factors over the edges of gamma, and the
    // refinement sum enumerates those distributions again; each exact
    // refinement therefore receives an equal share.
    Rat share = coeff / Rat(static_cast<long>(hosts.size()));
    for (const auto& host : hosts) {
        auto isos = insertionIsomorphisms(parts, host);
        if (isos.empty()) continue;
        Rat norm = share / Rat(static_cast<long>(isos.size()));
        for (const auto& iota : isos) {
            RibbonGraph g = insertGraph(host, iota, parts);
            out.add(generatorMonomial(serialize(g)), norm / Rat(maxf(g)));
        }
    }
    return out;
}

} // namespace

GraphPoly graftPoly(const RibbonGraph& gamma, const GraphPoly& arg, const GraftOptions& opts) {
    std::vector<std::pair<GraphMonomial, Rat>> terms(arg.terms.begin(), arg.terms.end());
    if (opts.workers <= 1 || terms.size() < 2) {
        GraphPoly out;
        for (const auto& [mono, coeff] : terms) out = out + graftMonomial(gamma, mono, coeff);
        return out;
    }
    // exact rational addition commutes, so any merge order is deterministic
    std::vector<GraphPoly> partial(terms.size());
    std::atomic<std::size_t> cursor{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t i = cursor.fetch_add(1);
            if (i >= terms.size()) return;
            partial[i] = graftMonomial(gamma, terms[i].first, terms[i].second);
        }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < opts.workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    GraphPoly out;
    for (const auto& p : partial) out = out + p;
    return out;
}

SeriesTruncation graft(const RibbonGraph& gamma, const SeriesTruncation& arg, int N,
                       const GraftOptions& opts) {
    int fGamma = topology(gamma).internalFaces;
    SeriesTruncation out(N);
    for (int l = 0; l + fGamma <= N && l <= arg.maxLoops; ++l) {
        GraphPoly part = graftPoly(gamma, arg.at(l), opts);
        out.at(l + fGamma) = out.at(l + fGamma) + part;
    }
    return out;
}

DseSolution dseSolve(int eMax, int vMax, const GraftOptions& opts) {
    if (eMax > 5 || vMax > 5)
        throw std::invalid_argument("dseSolve: truncation beyond the desk-scale guard");
    int top = std::max(eMax, vMax);
    DseSolution sol;
    sol.ce.assign(static_cast<std::size_t>(top) + 1, GraphPoly::zero());
    sol.cv.assign(static_cast<std::size_t>(top) + 1, GraphPoly::zero());
    sol.ce[0] = GraphPoly::unit();
    sol.cv[0] = GraphPoly::fromMonomial(vertexMonomial(1));

    std::vector<std::vector<RibbonGraph>> prims(static_cast<std::size_t>(top) + 1);
    for (int f = 1; f <= vMax; ++f) prims[static_cast<std::size_t>(f)] = primitives4(f, opts.enumOpts);
    // the only primitive 2-point graphs are the two tadpole orientations
    std::vector<RibbonGraph> tadpoles =
        enumerateGraphs(EnumKey{2, 1, EnumFilter::OnePI}, opts.enumOpts);

    auto buildSeries = [&](int upTo) {
        SeriesTruncation xe(upTo), xv(upTo);
        xe.at(0) = GraphPoly::unit();
        for (int k = 1; k <= upTo; ++k) {
            xe.at(k) = GraphPoly::zero() - sol.ce[static_cast<std::size_t>(k)];
            xv.at(k) = sol.cv[static_cast<std::size_t>(k)];
        }
        xv.at(0) = sol.cv[0];
        return std::pair(xe, xv);
    };

    for (int n = 1; n <= top; ++n) {
        auto [xe, xv] = buildSeries(n - 1);
        SeriesTruncation invE = seriesInverse(xe);
        SeriesTruncation q = xv * invE * invE;
        if (n <= eMax) {
            SeriesTruncation argE = q * xe; // = X^v / X^e
            GraphPoly cn;
            for (const auto& tp : tadpoles)
                cn = cn + graftPoly(tp, argE.at(n - 1), opts);
            sol.ce[static_cast<std::size_t>(n)] = cn;
        }
        if (n <= vMax) {
            GraphPoly cn;
            for (int f = 1; f <= n; ++f) {
                if (prims[static_cast<std::size_t>(f)].empty()) continue;
                SeriesTruncation argV = q.pow(f) * xv;
                for (const auto& gamma : prims[static_cast<std::size_t>(f)])
                    cn = cn + graftPoly(gamma, argV.at(n - f), opts);
            }
            sol.cv[static_cast<std::size_t>(n)] = cn;
        }
    }

    auto check = [&](char kind, int n, const GraphPoly& got) {
        DseOrderReport rep;
        rep.order = n;
        rep.kind = kind;
        rep.graphCount = static_cast<long>(got.terms.size());
        rep.unitCoefficients = true;
        for (const auto& [m, c] : got.terms) {
            if (c != 1) rep.unitCoefficients = false;
            bool singleGen = m.vertexPower == 0 && m.gens.size() == 1 && m.gens[0].second == 1;
            rep.serials.push_back(singleGen ? m.gens[0].first : m.str());
        }
        GraphPoly want = cCoefficient(kind == 'e' ? 2 : 4, n, opts.enumOpts);
        rep.matchesEnumeration = got == want;
        sol.report.push_back(std::move(rep));
    };
    for (int n = 1; n <= eMax; ++n) check('e', n, sol.ce[static_cast<std::size_t>(n)]);
    for (int n = 1; n <= vMax; ++n) check('v', n, sol.cv[static_cast<std::size_t>(n)]);
    return sol;
}

} // namespace mft
