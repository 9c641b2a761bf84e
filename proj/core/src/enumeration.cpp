#include "mft/enumeration.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace mft {

namespace {

// Backtracking generator over canonically labelled rooted graphs.
//
// Vertices are the blocks {4i-3..4i} with sigma^{-1}(x) = x+1 cyclically, so
// sigma is fixed once the block count is known. The search assigns alpha in
// label order: half-edge 1 is the external root; any later undecided label is
// made external, paired into a fresh block, or paired back to an undecided
// label of an existing block. Processing labels in increasing order makes
// every emitted assignment its own canonical rooted labelling, so the output
// is duplicate-free by construction.
struct Generator {
    int targetVertices;
    int targetExt;
    bool onePi;
    std::vector<RibbonGraph> out;

    int nLabels() const { return 4 * targetVertices; }

    // partner: 0 undecided, -1 external, else the paired label
    std::vector<int> partner;
    int blocks = 0;
    int extUsed = 0;

    struct State {
        std::vector<int> partner;
        int blocks;
        int extUsed;
        int next;
    };

    State state(int next) const { return State{partner, blocks, extUsed, next}; }
    void restore(const State& s) {
        partner = s.partner;
        blocks = s.blocks;
        extUsed = s.extUsed;
    }

    void run() {
        partner.assign(nLabels() + 1, 0);
        blocks = 1; // root block
        partner[1] = -1;
        extUsed = 1;
        step(2);
    }

    // one-decision expansions of a state, in the same order step() explores
    std::vector<State> expand(const State& s) {
        restore(s);
        std::vector<State> children;
        int h = s.next;
        int limit = 4 * blocks;
        while (h <= limit && partner[h] != 0) ++h;
        if (h > limit) return children; // terminal; caller re-runs step()
        if (extUsed < targetExt) {
            partner[h] = -1;
            ++extUsed;
            children.push_back(state(h + 1));
            partner[h] = 0;
            --extUsed;
        }
        if (blocks < targetVertices) {
            int e = 4 * blocks + 1;
            ++blocks;
            partner[h] = e;
            partner[e] = h;
            children.push_back(state(h + 1));
            partner[h] = partner[e] = 0;
            --blocks;
        }
        for (int g = h + 1; g <= limit; ++g) {
            if (partner[g] != 0) continue;
            partner[h] = g;
            partner[g] = h;
            children.push_back(state(h + 1));
            partner[h] = partner[g] = 0;
        }
        return children;
    }

    void step(int h) {
        int limit = 4 * blocks;
        while (h <= limit && partner[h] != 0) ++h;
        if (h > limit) {
            if (blocks == targetVertices && extUsed == targetExt) emit();
            return;
        }
        if (extUsed < targetExt) {
            partner[h] = -1;
            ++extUsed;
            step(h + 1);
            partner[h] = 0;
            --extUsed;
        }
        if (blocks < targetVertices) {
            int e = 4 * blocks + 1;
            ++blocks;
            partner[h] = e;
            partner[e] = h;
            step(h + 1);
            partner[h] = partner[e] = 0;
            --blocks;
        }
        for (int g = h + 1; g <= limit; ++g) {
            if (partner[g] != 0) continue;
            partner[h] = g;
            partner[g] = h;
            step(h + 1);
            partner[h] = partner[g] = 0;
        }
    }

    int sigmaInv(int x) const { return x % 4 == 0 ? x - 3 : x + 1; }

    void emit() {
        int n = nLabels();
        // faces of the open graph: cycles of sigma^{-1} ∘ alpha
        std::vector<int> seen(n + 1, 0);
        int boundaries = 0, internalFaces = 0;
        for (int s = 1; s <= n; ++s) {
            if (seen[s]) continue;
            bool ext = false;
            int x = s;
            do {
                seen[x] = 1;
                ext = ext || partner[x] == -1;
                x = sigmaInv(partner[x] == -1 ? x : partner[x]);
            } while (x != s);
            ++(ext ? boundaries : internalFaces);
        }
        if (boundaries != 1) return;
        int edges = (n - targetExt) / 2 + targetExt;
        int chi = targetVertices - edges + internalFaces + targetExt;
        if (chi != 1) return; // genus zero with a single boundary
        if (onePi && !bridgeless()) return;

        std::map<int, int> sig, alp;
        for (int x = 1; x <= n; ++x) {
            sig[x] = x % 4 == 1 ? x + 3 : x - 1; // inverse of sigmaInv
            alp[x] = partner[x] == -1 ? x : partner[x];
        }
        out.push_back(RibbonGraph{Permutation::fromMap(std::move(sig)),
                                  Permutation::fromMap(std::move(alp))});
    }

    bool bridgeless() {
        int V = targetVertices;
        std::vector<int> parent(V);
        auto find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        auto vertexOf = [](int label) { return (label - 1) / 4; };
        std::vector<std::pair<int, int>> edges;
        for (int x = 1; x <= nLabels(); ++x)
            if (partner[x] > x) edges.emplace_back(vertexOf(x), vertexOf(partner[x]));
        for (std::size_t skip = 0; skip <= edges.size(); ++skip) {
            if (skip < edges.size() && edges[skip].first == edges[skip].second)
                continue; // self-loops are never bridges
            std::iota(parent.begin(), parent.end(), 0);
            for (std::size_t i = 0; i < edges.size(); ++i) {
                if (i == skip) continue;
                parent[find(edges[i].first)] = find(edges[i].second);
            }
            int comps = 0;
            for (int v = 0; v < V; ++v) comps += find(v) == v ? 1 : 0;
            if (skip == edges.size()) {
                if (comps != 1) return false; // not connected at all
            } else if (comps > 1) {
                return false;
            }
        }
        return true;
    }
};

void sortBySerialization(std::vector<RibbonGraph>& graphs) {
    std::vector<std::pair<std::string, RibbonGraph>> keyed;
    keyed.reserve(graphs.size());
    for (auto& g : graphs) keyed.emplace_back(serialize(g), std::move(g));
    std::sort(keyed.begin(), keyed.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    graphs.clear();
    for (auto& [k, g] : keyed) graphs.push_back(std::move(g));
}

std::vector<RibbonGraph> generate(const EnumKey& key, int workers) {
    int V = key.nExt == 2 ? key.loops : key.loops + 1;
    if (V == 0)
        return key.nExt == 2 ? std::vector<RibbonGraph>{emptyGraph()}
                             : std::vector<RibbonGraph>{bareVertex()};
    Generator gen{V, key.nExt, key.filter == EnumFilter::OnePI, {}, {}, 0, 0};
    std::vector<RibbonGraph> all;
    if (workers <= 1) {
        gen.run();
        all = std::move(gen.out);
    } else {
        // split the search into prefix states, explore them in parallel, and
        // concatenate in state order so the result is worker-count independent
        gen.partner.assign(gen.nLabels() + 1, 0);
        gen.blocks = 1;
        gen.partner[1] = -1;
        gen.extUsed = 1;
        std::vector<Generator::State> frontier{gen.state(2)};
        while (static_cast<int>(frontier.size()) < 8 * workers) {
            std::vector<Generator::State> next;
            bool grew = false;
            for (const auto& s : frontier) {
                auto children = gen.expand(s);
                if (children.empty()) {
                    next.push_back(s);
                } else {
                    grew = true;
                    next.insert(next.end(), children.begin(), children.end());
                }
            }
            frontier = std::move(next);
            if (!grew) break;
        }
        std::vector<std::future<std::vector<RibbonGraph>>> tasks;
        std::atomic<std::size_t> cursor{0};
        std::vector<std::vector<RibbonGraph>> results(frontier.size());
        auto worker = [&]() {
            for (;;) {
                std::size_t i = cursor.fetch_add(1);
                if (i >= frontier.size()) return;
                Generator local{key.nExt == 2 ? key.loops : key.loops + 1, key.nExt,
                                key.filter == EnumFilter::OnePI, {}, {}, 0, 0};
                local.restore(frontier[i]);
                local.step(frontier[i].next);
                results[i] = std::move(local.out);
            }
        };
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
        for (auto& r : results) all.insert(all.end(), r.begin(), r.end());
    }
    sortBySerialization(all);
    return all;
}

std::filesystem::path cachePath(const EnumOptions& opts, const EnumKey& key) {
    return std::filesystem::path(opts.cacheDir) / cacheFileName(key);
}

std::vector<RibbonGraph> readCache(const std::filesystem::path& p, const EnumKey& key) {
    std::ifstream in(p);
    if (!in) throw std::runtime_error("cache open failed");
    std::string header;
    std::getline(in, header);
    std::ostringstream want;
    want << "key=" << key.nExt << "/" << key.loops << "/" << filterName(key.filter) << "; count=";
    if (header.rfind(want.str(), 0) != 0)
        throw std::runtime_error("cache header mismatch: " + header);
    long count = std::stol(header.substr(want.str().size()));
    std::vector<RibbonGraph> graphs;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) graphs.push_back(parseGraph(line));
    if (count != static_cast<long>(graphs.size()))
        throw std::runtime_error("cache count mismatch");
    return graphs;
}

void writeCache(const std::filesystem::path& p, const EnumKey& key,
                const std::vector<RibbonGraph>& graphs) {
    std::filesystem::create_directories(p.parent_path());
    std::filesystem::path tmp = p;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        out << "key=" << key.nExt << "/" << key.loops << "/" << filterName(key.filter)
            << "; count=" << graphs.size() << "\n";
        for (const auto& g : graphs) out << serialize(g) << "\n";
    }
    std::filesystem::rename(tmp, p);
}

} // namespace

const char* filterName(EnumFilter f) { return f == EnumFilter::Connected ? "connected" : "onepi"; }

const char* kindName(CountKind k) {
    switch (k) {
        case CountKind::G2: return "G2";
        case CountKind::G4: return "G4";
        case CountKind::PI2: return "PI2";
        case CountKind::PI4: return "PI4";
    }
    return "?";
}

std::string cacheFileName(const EnumKey& key) {
    std::ostringstream os;
    os << "enum_v1_" << key.nExt << "_" << key.loops << "_" << filterName(key.filter) << ".txt";
    return os.str();
}

std::vector<RibbonGraph> enumerateGraphs(const EnumKey& key, const EnumOptions& opts) {
    if (key.nExt != 2 && key.nExt != 4)
        throw std::invalid_argument("enumerate: nExt must be 2 or 4");
    if (key.loops < 0 || key.loops > opts.loopGuard)
        throw std::invalid_argument("enumerate: loop order outside resource guard");
    if (!opts.cacheDir.empty()) {
        auto p = cachePath(opts, key);
        if (std::filesystem::exists(p)) {
            try {
                return readCache(p, key);
            } catch (const std::exception&) {
                // fall through and regenerate
            }
        }
        auto graphs = generate(key, opts.workers);
        writeCache(p, key, graphs);
        return graphs;
    }
    return generate(key, opts.workers);
}

long enumerationCount(const EnumKey& key, const EnumOptions& opts) {
    return static_cast<long>(enumerateGraphs(key, opts).size());
}

FormalSeries countingSeries(CountKind kind, int maxOrder) {
    if (maxOrder > 12) throw std::invalid_argument("countingSeries: maxOrder > 12");
    std::size_t n = static_cast<std::size_t>(maxOrder) + 1;
    std::size_t work = n + 8; // headroom for the c^12 products
    // s = sqrt(1+12λ), c^2 = (s-1)/(6λ)
    FormalSeries onePlus(work);
    onePlus[0] = 1;
    if (work > 1) onePlus[1] = 12;
    FormalSeries s = onePlus.sqrt1();
    FormalSeries c2 = (s - FormalSeries::constant(1, work)).shiftDown(1).scaled(Rat(1, 6));
    FormalSeries c4 = c2 * c2;
    FormalSeries c6 = c4 * c2;
    FormalSeries c8 = c4 * c4;
    FormalSeries c12 = c6 * c6;
    FormalSeries g2 = c6.shiftUp(1) + c2;
    FormalSeries g4 = c12.shiftUp(2).scaled(2) + c8.shiftUp(1);
    FormalSeries series(work);
    switch (kind) {
        case CountKind::G2: series = g2; break;
        case CountKind::G4: series = g4; break;
        case CountKind::PI2: series = (g2 - FormalSeries::constant(1, work)) * g2.inverse(); break;
        case CountKind::PI4: series = g4 * g2.pow(4).inverse(); break;
    }
    // report |coefficient of (-λ)^k|; each series has a uniform sign pattern
    FormalSeries out(n);
    for (std::size_t k = 0; k < n; ++k) {
        Rat a = series[k] * ((k % 2 == 0) ? 1 : -1);
        out[k] = a < 0 ? -a : a;
        if (!isIntegerRat(out[k]))
            throw std::logic_error("counting series coefficient is not an integer");
    }
    return out;
}

int lambdaOrder(CountKind kind, int loops) {
    return (kind == CountKind::G2 || kind == CountKind::PI2) ? loops : loops + 1;
}

EnumKey keyForKind(CountKind kind, int lambdaOrder) {
    EnumKey key;
    key.nExt = (kind == CountKind::G2 || kind == CountKind::PI2) ? 2 : 4;
    key.loops = key.nExt == 2 ? lambdaOrder : lambdaOrder - 1;
    key.filter = (kind == CountKind::G2 || kind == CountKind::G4) ? EnumFilter::Connected
                                                                  : EnumFilter::OnePI;
    return key;
}

CountReport verifyCounts(int maxOrder, const EnumOptions& opts) {
    CountReport rep;
    for (CountKind kind : {CountKind::G2, CountKind::G4, CountKind::PI2, CountKind::PI4}) {
        FormalSeries series = countingSeries(kind, maxOrder);
        int first = (kind == CountKind::G2) ? 0 : 1;
        for (int m = first; m <= maxOrder; ++m) {
            EnumKey key = keyForKind(kind, m);
            CountRow row;
            row.kind = kind;
            row.lambdaOrder = m;
            row.enumerated = enumerationCount(key, opts);
            row.series = toLong(series[static_cast<std::size_t>(m)]);
            rep.rows.push_back(row);
        }
    }
    return rep;
}

} // namespace mft
