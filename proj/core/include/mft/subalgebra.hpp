#pragma once

#include "mft/dse.hpp"

#include <set>

namespace mft {

// Polynomials with exact rational coefficients in the formal loop-order
// symbols c^v_0, c^v_1, ..., c^e_1, ...
struct CoeffMonomial {
    // (kind, index) -> exponent; kind is 'v' or 'e'
    std::map<std::pair<char, int>, int> powers;
    bool operator<(const CoeffMonomial& o) const { return powers < o.powers; }
    bool operator==(const CoeffMonomial& o) const { return powers == o.powers; }
    long loopGrade() const;
    std::string str() const;
};

struct CoeffPolynomial {
    std::map<CoeffMonomial, Rat> terms;

    static CoeffPolynomial one();
    static CoeffPolynomial symbol(char kind, int index, int power = 1);
    CoeffPolynomial& add(const CoeffMonomial& m, const Rat& c);
    CoeffPolynomial operator+(const CoeffPolynomial& o) const;
    CoeffPolynomial operator*(const CoeffPolynomial& o) const;
    CoeffPolynomial scaled(const Rat& c) const;
    bool operator==(const CoeffPolynomial& o) const { return terms == o.terms; }
    std::string str() const;
};

// (X^v)^k at loop order j: sum over compositions of j into k parts.
CoeffPolynomial qV(int k, int j);
// 1/(X^e)^k at loop order j, by the Faà di Bruno factorial weights.
CoeffPolynomial qE(int k, int j);
// The left coproduct polynomial P_{n,k} of the 2-point ('e') or 4-point ('v')
// loop coefficient.
CoeffPolynomial pPoly(char kind, int n, int k);

// Substitute the enumerated loop coefficients for the symbols.
GraphPoly substitute(const CoeffPolynomial& poly, const EnumOptions& opts = {});

struct CheckReport {
    bool pass = false;
    std::string witness; // first failing term, if any
};

// Δ(c_n) = Σ_k P_{n,k} ⊗ c_{n-k} on enumerated coefficients, exact.
CheckReport verifyCnCoproduct(char kind, int n, const EnumOptions& opts = {});

// Δ(f) = Σ_k f·Q^k ⊗ (f)_k for f = (X^v)^{n1}·(X^e)^{-n2}, truncated at N
// loops; n2 may be negative (positive powers of X^e).
CheckReport verifyMonomialCoproduct(int n1, int n2, int N, const EnumOptions& opts = {});

struct HochschildOrderVerdict {
    int primitiveLoops = 0;
    bool holds = false;
    std::string witness;
};

struct HochschildReport {
    char kind = 'e';
    int truncation = 0;
    bool perLoopOrder = false;
    // combined identity over all primitives (asserted by theory)
    bool combinedHolds = false;
    std::string combinedWitness;
    // one verdict per primitive loop order when perLoopOrder is set
    std::vector<HochschildOrderVerdict> perOrder;
};

HochschildReport hochschildCheck(char kind, int N, bool perLoopOrder,
                                 const GraftOptions& opts = {});

// Loop numbers of all primitive π-projected cographs G/H over admissible
// proper subgraphs (including the trivial skeleton).
std::set<int> cographLoopSpectrum(const RibbonGraph& g);

struct SpectrumScanRow {
    std::string serial;
    std::vector<int> spectrum;
};

struct SpectrumScanReport {
    int maxLoops = 0;
    bool allSingleton = true;
    std::vector<SpectrumScanRow> nonSingleton;
    long scanned = 0;
};

// Scan every 1PI generator with loops <= maxLoops of both kinds.
SpectrumScanReport cographSpectrumScan(int maxLoops, const EnumOptions& opts = {});

} // namespace mft
