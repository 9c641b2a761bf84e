#pragma once

#include "mft/enumeration.hpp"
#include "mft/rational.hpp"
#include "mft/ribbon.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace mft {

// Finite spectrum of the kinetic operator: positive eigenvalues with
// multiplicities.
struct Spectrum {
    std::vector<Rat> eigenvalues;
    std::vector<long> multiplicities;

    long matrixSize() const;
    void validate() const;
    static Spectrum fromJson(const std::string& text);
    std::string toJson() const;
};

struct Amplitude {
    Rat value;          // coefficient of (-λ)^{lambdaPower} · N^{-invNPower}
    int lambdaPower = 0;
    int invNPower = 0;
};

// Feynman-rule evaluation with labelled faces. faceLabels maps a face index
// (in faces(g) order: external faces along the boundary first) to its fixed
// eigenvalue; every external face must be labelled. Unlabelled faces are
// summed over the spectrum with weight r_n and contribute one power of 1/N.
Amplitude amplitude(const RibbonGraph& g, const std::map<int, Rat>& faceLabels,
                    const Spectrum& spec);

// Coefficients of the planar connected n-point function in t = -λ, with the
// 1/N face normalizations folded in. labels are the external-face values in
// boundary order.
std::vector<Rat> correlationSeries(int nExt, int maxOrder, const Spectrum& spec,
                                   const std::vector<Rat>& labels,
                                   const EnumOptions& opts = {});

// G_{|abcd|} = t (G_{|ab|}G_{|cd|} - G_{|ad|}G_{|cb|}) / ((E_a-E_c)(E_b-E_d)),
// order by order through the given λ-order. Needs E_a != E_c and E_b != E_d.
bool wardW4PCheck(int order, const Spectrum& spec, const std::array<Rat, 4>& labels,
                  const EnumOptions& opts = {});

// The 2-point Dyson-Schwinger identity before the Ward substitution, order by
// order through the given λ-order.
bool dse2Check(int order, const Spectrum& spec, const Rat& ea, const Rat& eb,
               const EnumOptions& opts = {});

struct AnalyticParams {
    double lambda = 0.0;
    double mu2 = 1.0;
    double cutoff = 1e4; // Λ² for the truncated integral
    int terms = 2000000; // series term guard
};

// 2F1(a, 1-a; 2; -x) for x >= 0 via the Pfaff transformation.
double hyp2f1Sym(double a, double x, int maxTerms = 2000000);
// R(z) = z · 2F1(α_λ, 1-α_λ; 2; -z/μ²), α_λ = arcsin(λπ)/π.
double hypR(double z, const AnalyticParams& p);

struct ResidualBreakdown {
    double residual = 0.0;
    double integralMain = 0.0; // quadrature on [0, Λ²]
    double tailEstimate = 0.0; // power-law tail beyond Λ²
};

// |R(z) - z + λ z² ∫ R(t) dt / ((μ²+t)²(μ²+t+z))| with the integral cut at Λ²
// plus an asymptotic tail estimate.
ResidualBreakdown linEqResidual(double z, const AnalyticParams& p);

double anomalousDimension(double lambda);  // -arctan(λπ)/π
double spectralDimension(double lambda);   // 4 - 2 arcsin(λπ)/π

} // namespace mft
