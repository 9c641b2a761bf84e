#include "mft/subalgebra.hpp"

#include <functional>
#include <sstream>

namespace mft {

long CoeffMonomial::loopGrade() const {
    long g = 0;
    for (const auto& [sym, e] : powers) g += static_cast<long>(sym.second) * e;
    return g;
}

std::string CoeffMonomial::str() const {
    if (powers.empty()) return "1";
    std::ostringstream os;
    bool first = true;
    for (const auto& [sym, e] : powers) {
        if (!first) os << " ";
        os << "c" << sym.first << "_" << sym.second;
        if (e != 1) os << "^" << e;
        first = false;
    }
    return os.str();
}

CoeffPolynomial CoeffPolynomial::one() {
    CoeffPolynomial p;
    p.terms.emplace(CoeffMonomial{}, Rat(1));
    return p;
}

CoeffPolynomial CoeffPolynomial::symbol(char kind, int index, int power) {
    CoeffPolynomial p;
    CoeffMonomial m;
    if (power != 0) m.powers[{kind, index}] = power;
    p.terms.emplace(std::move(m), Rat(1));
    return p;
}

CoeffPolynomial& CoeffPolynomial::add(const CoeffMonomial& m, const Rat& c) {
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

CoeffPolynomial CoeffPolynomial::operator+(const CoeffPolynomial& o) const {
    CoeffPolynomial r = *this;
    for (const auto& [m, c] : o.terms) r.add(m, c);
    return r;
}

CoeffPolynomial CoeffPolynomial::operator*(const CoeffPolynomial& o) const {
    CoeffPolynomial r;
    for (const auto& [m1, c1] : terms)
        for (const auto& [m2, c2] : o.terms) {
            CoeffMonomial m = m1;
            for (const auto& [sym, e] : m2.powers) {
                m.powers[sym] += e;
                if (m.powers[sym] == 0) m.powers.erase(sym);
            }
            r.add(m, c1 * c2);
        }
    return r;
}

CoeffPolynomial CoeffPolynomial::scaled(const Rat& c) const {
    CoeffPolynomial r;
    if (c == 0) return r;
    for (const auto& [m, v] : terms) r.terms.emplace(m, v * c);
    return r;
}

std::string CoeffPolynomial::str() const {
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

CoeffPolynomial qV(int k, int j) {
    if (k < 0 || j < 0) throw std::invalid_argument("qV: negative arguments");
    if (k == 0) return j == 0 ? CoeffPolynomial::one() : CoeffPolynomial{};
    CoeffPolynomial out;
    std::vector<int> part(static_cast<std::size_t>(k), 0);
    std::function<void(int, int)> rec = [&](int slot, int left) {
        if (slot == k - 1) {
            part[static_cast<std::size_t>(slot)] = left;
            CoeffMonomial m;
            for (int p : part) m.powers[{'v', p}] += 1;
            out.add(m, 1);
            return;
        }
        for (int p = 0; p <= left; ++p) {
            part[static_cast<std::size_t>(slot)] = p;
            rec(slot + 1, left - p);
        }
    };
    rec(0, j);
    return out;
}

CoeffPolynomial qE(int k, int j) {
    if (k < 0 || j < 0) throw std::invalid_argument("qE: negative arguments");
    if (k == 0) return j == 0 ? CoeffPolynomial::one() : CoeffPolynomial{};
    CoeffPolynomial out;
    std::vector<int> s(static_cast<std::size_t>(j) + 1, 0); // s[i] multiplicity of c^e_i
    std::function<void(int, int)> rec = [&](int i, int left) {
        if (left == 0) {
            long total = 0;
            for (int t = 1; t <= j; ++t) total += s[static_cast<std::size_t>(t)];
            Rat w = factorialRat(total + k - 1) / factorialRat(k - 1);
            CoeffMonomial m;
            for (int t = 1; t <= j; ++t) {
                int st = s[static_cast<std::size_t>(t)];
                if (st == 0) continue;
                w /= factorialRat(st);
                m.powers[{'e', t}] = st;
            }
            out.add(m, w);
            return;
        }
        if (i > left) return;
        for (int cnt = 0; cnt * i <= left; ++cnt) {
            s[static_cast<std::size_t>(i)] = cnt;
            rec(i + 1, left - cnt * i);
        }
        s[static_cast<std::size_t>(i)] = 0;
    };
    rec(1, j);
    return out;
}

CoeffPolynomial pPoly(char kind, int n, int k) {
    if (kind != 'e' && kind != 'v') throw std::invalid_argument("pPoly: kind must be e or v");
    if (k < 0 || k > n) throw std::invalid_argument("pPoly: need 0 <= k <= n");
    if (k == n) return CoeffPolynomial::symbol(kind, n);
    CoeffPolynomial out;
    for (int j = 0; j <= k; ++j) {
        CoeffPolynomial left = kind == 'v' ? qV(n - k + 1, j) : qV(n - k, j);
        CoeffPolynomial right = kind == 'v' ? qE(2 * (n - k), k - j) : qE(2 * (n - k) - 1, k - j);
        out = out + left * right;
    }
    return out;
}

GraphPoly substitute(const CoeffPolynomial& poly, const EnumOptions& opts) {
    GraphPoly out;
    for (const auto& [mono, coeff] : poly.terms) {
        GraphPoly term = GraphPoly::fromMonomial(unitMonomial(), coeff);
        for (const auto& [sym, e] : mono.powers) {
            GraphPoly value = sym.first == 'v' ? cCoefficient(4, sym.second, opts)
                                               : cCoefficient(2, sym.second, opts);
            for (int i = 0; i < e; ++i) term = term * value;
        }
        out = out + term;
    }
    return out;
}

namespace {

std::string firstDiff(const TensorPoly& a, const TensorPoly& b) {
    TensorPoly d = a - b;
    if (d.terms.empty()) return {};
    const auto& [k, c] = *d.terms.begin();
    std::ostringstream os;
    os << ratToString(c) << "·(" << k.first.str() << ") ⊗ (" << k.second.str() << ")";
    return os.str();
}

// tensor series indexed by total loop grade
struct TensorSeries {
    int maxLoops;
    std::vector<TensorPoly> at;
    explicit TensorSeries(int n) : maxLoops(n), at(static_cast<std::size_t>(n) + 1) {}
    void addGraded(const TensorPoly& t) {
        for (const auto& [k, c] : t.terms) {
            long grade = monomialLoops(k.first) + monomialLoops(k.second);
            if (grade <= maxLoops) at[static_cast<std::size_t>(grade)].add(k.first, k.second, c);
        }
    }
};

TensorSeries coproductSeries(const SeriesTruncation& s, int N) {
    TensorSeries out(N);
    for (int l = 0; l <= s.maxLoops && l <= N; ++l) out.addGraded(coproduct(s.at(l)));
    return out;
}

} // namespace

CheckReport verifyCnCoproduct(char kind, int n, const EnumOptions& opts) {
    int nExt = kind == 'e' ? 2 : 4;
    TensorPoly lhs;
    for (const auto& g : enumerateGraphs(EnumKey{nExt, n, EnumFilter::OnePI}, opts))
        lhs = lhs + coproductGraph(g);
    TensorPoly rhs;
    for (int k = 0; k <= n; ++k)
        rhs = rhs + tensorOf(substitute(pPoly(kind, n, k), opts), cCoefficient(nExt, n - k, opts));
    CheckReport rep;
    rep.pass = lhs == rhs;
    if (!rep.pass) rep.witness = firstDiff(lhs, rhs);
    return rep;
}

CheckReport verifyMonomialCoproduct(int n1, int n2, int N, const EnumOptions& opts) {
    if (n1 < 0) throw std::invalid_argument("verifyMonomialCoproduct: n1 >= 0");
    SeriesTruncation xe = xSeriesE(N, opts);
    SeriesTruncation xv = xSeriesV(N, opts);
    SeriesTruncation invE = seriesInverse(xe);
    SeriesTruncation q = xv * invE * invE;

    SeriesTruncation f = SeriesTruncation::unit(N);
    for (int i = 0; i < n1; ++i) f = f * xv;
    for (int i = 0; i < n2; ++i) f = f * invE;
    for (int i = 0; i < -n2; ++i) f = f * xe;

    TensorSeries lhs = coproductSeries(f, N);
    TensorSeries rhs(N);
    SeriesTruncation fqk = f;
    for (int k = 0; k <= N; ++k) {
        if (k > 0) fqk = fqk * q;
        for (int i = 0; i + k <= N; ++i)
            rhs.at[static_cast<std::size_t>(i + k)] =
                rhs.at[static_cast<std::size_t>(i + k)] + tensorOf(fqk.at(i), f.at(k));
    }
    CheckReport rep;
    rep.pass = true;
    for (int l = 0; l <= N; ++l) {
        if (!(lhs.at[static_cast<std::size_t>(l)] == rhs.at[static_cast<std::size_t>(l)])) {
            rep.pass = false;
            rep.witness = "loop " + std::to_string(l) + ": " +
                          firstDiff(lhs.at[static_cast<std::size_t>(l)],
                                    rhs.at[static_cast<std::size_t>(l)]);
            break;
        }
    }
    return rep;
}

namespace {

struct HochschildSides {
    TensorSeries lhs;
    TensorSeries rhs;
};

HochschildSides hochschildSides(char kind, const std::vector<RibbonGraph>& primitives, int N,
                                const GraftOptions& opts) {
    SeriesTruncation xe = xSeriesE(N, opts.enumOpts);
    SeriesTruncation xv = xSeriesV(N, opts.enumOpts);
    SeriesTruncation invE = seriesInverse(xe);
    SeriesTruncation q = xv * invE * invE;
    SeriesTruncation xb = kind == 'e' ? xe : xv;
    GraphPoly bullet = kind == 'e' ? GraphPoly::unit() : GraphPoly::fromMonomial(vertexMonomial(1));

    SeriesTruncation total(N);
    TensorSeries rhs2(N);
    for (const auto& gamma : primitives) {
        int f = topology(gamma).internalFaces;
        SeriesTruncation arg = q.pow(f) * xb;
        total = total + graft(gamma, arg, N, opts);
        TensorSeries dArg = coproductSeries(arg, N);
        for (int l = 0; l <= N; ++l) {
            for (const auto& [key, c] : dArg.at[static_cast<std::size_t>(l)].terms) {
                GraphPoly image = graftPoly(gamma, GraphPoly::fromMonomial(key.second, c), opts);
                for (const auto& [m2, c2] : image.terms) {
                    long grade = monomialLoops(key.first) + monomialLoops(m2);
                    if (grade <= N) rhs2.at[static_cast<std::size_t>(grade)].add(key.first, m2, c2);
                }
            }
        }
    }
    TensorSeries lhs = coproductSeries(total, N);
    for (int l = 0; l <= N; ++l) {
        TensorPoly t1 = tensorOf(total.at(l), bullet);
        for (const auto& [key, c] : t1.terms) rhs2.at[static_cast<std::size_t>(l)].add(key.first, key.second, c);
    }
    return HochschildSides{std::move(lhs), std::move(rhs2)};
}

std::pair<bool, std::string> compareSides(const HochschildSides& sides, int N) {
    for (int l = 0; l <= N; ++l) {
        if (!(sides.lhs.at[static_cast<std::size_t>(l)] == sides.rhs.at[static_cast<std::size_t>(l)])) {
            return {false, "loop " + std::to_string(l) + ": " +
                               firstDiff(sides.lhs.at[static_cast<std::size_t>(l)],
                                         sides.rhs.at[static_cast<std::size_t>(l)])};
        }
    }
    return {true, {}};
}

} // namespace

HochschildReport hochschildCheck(char kind, int N, bool perLoopOrder, const GraftOptions& opts) {
    if (kind != 'e' && kind != 'v') throw std::invalid_argument("hochschildCheck: kind e or v");
    HochschildReport rep;
    rep.kind = kind;
    rep.truncation = N;
    rep.perLoopOrder = perLoopOrder;

    std::map<int, std::vector<RibbonGraph>> byOrder;
    if (kind == 'e') {
        byOrder[1] = enumerateGraphs(EnumKey{2, 1, EnumFilter::OnePI}, opts.enumOpts);
    } else {
        for (int f = 1; f <= N; ++f) {
            auto p = primitives4(f, opts.enumOpts);
            if (!p.empty()) byOrder[f] = std::move(p);
        }
    }
    std::vector<RibbonGraph> all;
    for (const auto& [f, v] : byOrder) all.insert(all.end(), v.begin(), v.end());

    auto combined = compareSides(hochschildSides(kind, all, N, opts), N);
    rep.combinedHolds = combined.first;
    rep.combinedWitness = combined.second;

    if (perLoopOrder) {
        for (const auto& [f, prims] : byOrder) {
            auto verdict = compareSides(hochschildSides(kind, prims, N, opts), N);
            rep.perOrder.push_back(HochschildOrderVerdict{f, verdict.first, verdict.second});
        }
    }
    return rep;
}

std::set<int> cographLoopSpectrum(const RibbonGraph& g) {
    std::set<int> spectrum;
    auto full = internalPairs(g);
    for (const auto& spec : admissibleSubgraphs(g)) {
        if (spec.pairs.size() == full.size()) continue;
        RibbonGraph co = cographPi(g, spec);
        if (!co.empty() && isPrimitive(co)) spectrum.insert(topology(co).internalFaces);
    }
    return spectrum;
}

SpectrumScanReport cographSpectrumScan(int maxLoops, const EnumOptions& opts) {
    SpectrumScanReport rep;
    rep.maxLoops = maxLoops;
    for (int nExt : {2, 4}) {
        for (int k = 1; k <= maxLoops; ++k) {
            for (const auto& g : enumerateGraphs(EnumKey{nExt, k, EnumFilter::OnePI}, opts)) {
                ++rep.scanned;
                auto s = cographLoopSpectrum(g);
                if (s.size() != 1) {
                    rep.allSingleton = false;
                    rep.nonSingleton.push_back(
                        SpectrumScanRow{serialize(g), std::vector<int>(s.begin(), s.end())});
                }
            }
        }
    }
    return rep;
}

} // namespace mft
