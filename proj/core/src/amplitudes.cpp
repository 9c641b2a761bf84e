#include "mft/amplitudes.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <stdexcept>

namespace mft {

long Spectrum::matrixSize() const {
    long n = 0;
    for (long r : multiplicities) n += r;
    return n;
}

void Spectrum::validate() const {
    if (eigenvalues.size() != multiplicities.size() || eigenvalues.empty())
        throw std::invalid_argument("spectrum: eigenvalues and multiplicities must align");
    for (const auto& e : eigenvalues)
        if (e <= 0) throw std::invalid_argument("spectrum: eigenvalues must be positive");
    for (long r : multiplicities)
        if (r <= 0) throw std::invalid_argument("spectrum: multiplicities must be positive");
}

Spectrum Spectrum::fromJson(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    Spectrum s;
    for (const auto& e : j.at("eigenvalues")) {
        if (e.is_string())
            s.eigenvalues.push_back(ratFromString(e.get<std::string>()));
        else
            s.eigenvalues.push_back(Rat(e.get<long>()));
    }
    for (const auto& r : j.at("multiplicities")) s.multiplicities.push_back(r.get<long>());
    s.validate();
    return s;
}

std::string Spectrum::toJson() const {
    nlohmann::ordered_json j;
    j["eigenvalues"] = nlohmann::ordered_json::array();
    for (const auto& e : eigenvalues) j["eigenvalues"].push_back(ratToString(e));
    j["multiplicities"] = multiplicities;
    return j.dump();
}

Amplitude amplitude(const RibbonGraph& g, const std::map<int, Rat>& faceLabels,
                    const Spectrum& spec) {
    spec.validate();
    if (g.empty()) throw std::invalid_argument("amplitude: empty graph has no Feynman weight");
    FaceData fd = faces(g);
    int nFaces = static_cast<int>(fd.cycles.size());
    for (int f = 0; f < fd.externalCount; ++f)
        if (!faceLabels.count(f))
            throw std::invalid_argument("amplitude: external face " + std::to_string(f) +
                                        " is unlabelled");
    for (const auto& [f, v] : faceLabels)
        if (f < 0 || f >= nFaces)
            throw std::invalid_argument("amplitude: no face with index " + std::to_string(f));

    std::vector<int> summed;
    for (int f = 0; f < nFaces; ++f)
        if (!faceLabels.count(f)) summed.push_back(f);

    // edges of the completion: every alpha orbit {x, alphaBar(x)}
    DualMap comp = completion(g);
    std::vector<std::pair<int, int>> edges;
    for (const auto& [a, b] : comp.alpha.mapping())
        if (a < b) edges.emplace_back(a, b);

    Amplitude out;
    out.lambdaPower = vertexCount(g);
    out.invNPower = static_cast<int>(summed.size());

    std::size_t d = spec.eigenvalues.size();
    std::vector<std::size_t> idx(summed.size(), 0);
    std::vector<Rat> faceValue(static_cast<std::size_t>(nFaces));
    for (const auto& [f, v] : faceLabels) faceValue[static_cast<std::size_t>(f)] = v;

    Rat total(0);
    for (;;) {
        Rat weight(1);
        for (std::size_t i = 0; i < summed.size(); ++i) {
            faceValue[static_cast<std::size_t>(summed[i])] = spec.eigenvalues[idx[i]];
            weight *= spec.multiplicities[idx[i]];
        }
        Rat prod = weight;
        for (const auto& [a, b] : edges) {
            const Rat& ea = faceValue[static_cast<std::size_t>(fd.faceIndexOf(a))];
            const Rat& eb = faceValue[static_cast<std::size_t>(fd.faceIndexOf(b))];
            prod /= ea + eb;
        }
        total += prod;
        std::size_t pos = 0;
        while (pos < idx.size()) {
            if (++idx[pos] < d) break;
            idx[pos] = 0;
            ++pos;
        }
        if (pos == idx.size()) break;
        if (idx.empty()) break;
    }
    out.value = total;
    return out;
}

std::vector<Rat> correlationSeries(int nExt, int maxOrder, const Spectrum& spec,
                                   const std::vector<Rat>& labels, const EnumOptions& opts) {
    spec.validate();
    if (static_cast<int>(labels.size()) != nExt)
        throw std::invalid_argument("correlationSeries: need one label per external face");
    Rat n(spec.matrixSize());
    std::vector<Rat> out(static_cast<std::size_t>(maxOrder) + 1, Rat(0));
    for (int m = 0; m <= maxOrder; ++m) {
        if (nExt == 2 && m == 0) {
            out[0] = 1 / (labels[0] + labels[1]); // free propagator
            continue;
        }
        if (nExt == 4 && m == 0) continue;
        EnumKey key{nExt, nExt == 2 ? m : m - 1, EnumFilter::Connected};
        Rat sum(0);
        for (const auto& g : enumerateGraphs(key, opts)) {
            std::map<int, Rat> faceLabels;
            for (int f = 0; f < nExt; ++f) faceLabels[f] = labels[static_cast<std::size_t>(f)];
            Amplitude a = amplitude(g, faceLabels, spec);
            Rat nPow(1);
            for (int i = 0; i < a.invNPower; ++i) nPow *= n;
            sum += a.value / nPow;
        }
        out[static_cast<std::size_t>(m)] = sum;
    }
    return out;
}

bool wardW4PCheck(int order, const Spectrum& spec, const std::array<Rat, 4>& labels,
                  const EnumOptions& opts) {
    const Rat &ea = labels[0], &eb = labels[1], &ec = labels[2], &ed = labels[3];
    if (ea == ec || eb == ed)
        throw std::invalid_argument("wardW4PCheck: needs E_a != E_c and E_b != E_d");
    auto g4 = correlationSeries(4, order, spec, {ea, eb, ec, ed}, opts);
    auto gab = correlationSeries(2, order, spec, {ea, eb}, opts);
    auto gcd = correlationSeries(2, order, spec, {ec, ed}, opts);
    auto gad = correlationSeries(2, order, spec, {ea, ed}, opts);
    auto gcb = correlationSeries(2, order, spec, {ec, eb}, opts);
    Rat denom = (ea - ec) * (eb - ed);
    for (int m = 0; m <= order; ++m) {
        Rat rhs(0);
        if (m >= 1) {
            for (int i = 0; i + 1 <= m; ++i) {
                int j = m - 1 - i;
                rhs += gab[static_cast<std::size_t>(i)] * gcd[static_cast<std::size_t>(j)] -
                       gad[static_cast<std::size_t>(i)] * gcb[static_cast<std::size_t>(j)];
            }
            rhs /= denom;
        }
        if (g4[static_cast<std::size_t>(m)] != rhs) return false;
    }
    return true;
}

bool dse2Check(int order, const Spectrum& spec, const Rat& ea, const Rat& eb,
               const EnumOptions& opts) {
    spec.validate();
    Rat n(spec.matrixSize());
    auto gab = correlationSeries(2, order, spec, {ea, eb}, opts);
    std::size_t d = spec.eigenvalues.size();

    std::vector<std::vector<Rat>> gak(d), gkb(d);
    for (std::size_t k = 0; k < d; ++k) {
        gak[k] = correlationSeries(2, order, spec, {ea, spec.eigenvalues[k]}, opts);
        gkb[k] = correlationSeries(2, order, spec, {spec.eigenvalues[k], eb}, opts);
    }
    std::vector<std::vector<std::vector<Rat>>> g4(d, std::vector<std::vector<Rat>>(d));
    if (order >= 1)
        for (std::size_t k = 0; k < d; ++k)
            for (std::size_t l = 0; l < d; ++l)
                g4[k][l] = correlationSeries(
                    4, order - 1, spec, {ea, spec.eigenvalues[k], spec.eigenvalues[l], eb}, opts);

    for (int m = 0; m <= order; ++m) {
        Rat rhs = m == 0 ? 1 / (ea + eb) : Rat(0);
        if (m >= 1) {
            Rat brace(0);
            for (std::size_t k = 0; k < d; ++k)
                for (std::size_t l = 0; l < d; ++l)
                    brace += Rat(spec.multiplicities[k]) * Rat(spec.multiplicities[l]) *
                             g4[k][l][static_cast<std::size_t>(m - 1)] / (n * n);
            for (std::size_t k = 0; k < d; ++k) {
                Rat inner(0);
                for (int i = 0; i + 1 <= m; ++i) {
                    int j = m - 1 - i;
                    inner += gab[static_cast<std::size_t>(i)] *
                             (gak[k][static_cast<std::size_t>(j)] + gkb[k][static_cast<std::size_t>(j)]);
                }
                brace += Rat(spec.multiplicities[k]) * inner / n;
            }
            rhs = brace / (ea + eb);
        }
        if (gab[static_cast<std::size_t>(m)] != rhs) return false;
    }
    return true;
}

double hyp2f1Sym(double a, double x, int maxTerms) {
    if (x < 0) throw std::domain_error("hyp2f1Sym: x must be >= 0");
    if (a == 0.0) return 1.0;
    // Pfaff: 2F1(a,1-a;2;-x) = (1+x)^{-a} 2F1(a,1+a;2;w), w = x/(1+x) in [0,1)
    double w = x / (1.0 + x);
    double term = 1.0, sum = 1.0;
    for (int n = 0; n < maxTerms; ++n) {
        term *= (a + n) * (1.0 + a + n) / ((2.0 + n) * (1.0 + n)) * w;
        sum += term;
        if (std::abs(term) < 1e-16 * std::abs(sum)) break;
    }
    return std::pow(1.0 + x, -a) * sum;
}

double hypR(double z, const AnalyticParams& p) {
    if (z < 0) throw std::domain_error("hypR: z must be >= 0");
    if (std::abs(p.lambda) * M_PI > 1.0)
        throw std::domain_error("hypR: |λ| must be < 1/π for the real branch");
    if (z == 0) return 0.0;
    double alpha = std::asin(p.lambda * M_PI) / M_PI;
    return z * hyp2f1Sym(alpha, z / p.mu2, p.terms);
}

namespace {

// 32-point Gauss-Legendre on [a,b]
double gauss(const std::function<double(double)>& f, double a, double b) {
    static const double xs[16] = {
        0.0483076656877383162, 0.1444719615827964934, 0.2392873622521370745,
        0.3318686022821276498, 0.4213512761306353454, 0.5068999089322293900,
        0.5877157572407623290, 0.6630442669302152010, 0.7321821187402896804,
        0.7944837959679424069, 0.8493676137325699701, 0.8963211557660521240,
        0.9349060759377396892, 0.9647622555875064308, 0.9856115115452683354,
        0.9972638618494815635};
    static const double wsv[16] = {
        0.0965400885147278006, 0.0956387200792748594, 0.0938443990808045654,
        0.0911738786957638847, 0.0876520930044038111, 0.0833119242269467552,
        0.0781938957870703065, 0.0723457941088485062, 0.0658222227763618468,
        0.0586840934785355471, 0.0509980592623761762, 0.0428358980222266807,
        0.0342738629130214331, 0.0253920653092620595, 0.0162743947309056706,
        0.0070186100094700966};
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < 16; ++i)
        s += wsv[i] * (f(mid + half * xs[i]) + f(mid - half * xs[i]));
    return s * half;
}

} // namespace

ResidualBreakdown linEqResidual(double z, const AnalyticParams& p) {
    if (z <= 0) throw std::domain_error("linEqResidual: z must be > 0");
    double mu2 = p.mu2;
    double cutoff = p.cutoff;
    auto integrand = [&](double t) {
        return hypR(t, p) / ((mu2 + t) * (mu2 + t) * (mu2 + t + z));
    };
    // log-spaced panels resolve both ends of [0, Λ²]
    double main = 0.0;
    double lo = 0.0, hi = std::min(mu2, cutoff);
    main += gauss(integrand, lo, hi);
    while (hi < cutoff) {
        lo = hi;
        hi = std::min(2.0 * hi, cutoff);
        main += gauss(integrand, lo, hi);
    }
    // beyond Λ²: R(t) ≈ R(Λ²) (t/Λ²)^{1-α}; substitute t = Λ²/u and then
    // u = s^{1/α} to remove the endpoint singularity
    double alpha = std::asin(p.lambda * M_PI) / M_PI;
    double tail = 0.0;
    if (p.lambda != 0.0) {
        double rCut = hypR(cutoff, p);
        auto tailIntegrand = [&](double s) {
            if (s <= 0.0) return 0.0;
            double u = std::pow(s, 1.0 / alpha);
            double t = cutoff / u;
            double rApprox = rCut * std::pow(t / cutoff, 1.0 - alpha);
            // dt = -Λ²/u² du, du = (1/α) s^{1/α-1} ds
            double jac = (cutoff / (u * u)) * (1.0 / alpha) * std::pow(s, 1.0 / alpha - 1.0);
            return rApprox / ((mu2 + t) * (mu2 + t) * (mu2 + t + z)) * jac;
        };
        tail = gauss(tailIntegrand, 0.0, 1.0);
    } else {
        // free theory: R(t) = t exactly
        auto tailIntegrand = [&](double u) {
            if (u <= 0.0) return 0.0;
            double t = cutoff / u;
            return t / ((mu2 + t) * (mu2 + t) * (mu2 + t + z)) * (cutoff / (u * u));
        };
        tail = gauss(tailIntegrand, 0.0, 1.0);
    }
    double lhs = hypR(z, p);
    double rhs = z - p.lambda * z * z * (main + tail);
    return ResidualBreakdown{std::abs(lhs - rhs), main, tail};
}

double anomalousDimension(double lambda) {
    return -std::atan(lambda * M_PI) / M_PI + 0.0; // +0.0 normalizes -0
}

double spectralDimension(double lambda) {
    if (std::abs(lambda) * M_PI > 1.0)
        throw std::domain_error("spectralDimension: |λ| must be <= 1/π");
    return 4.0 - 2.0 * std::asin(lambda * M_PI) / M_PI;
}

} // namespace mft
