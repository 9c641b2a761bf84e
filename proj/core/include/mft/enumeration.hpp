#pragma once

#include "mft/ribbon.hpp"
#include "mft/series.hpp"

#include <string>
#include <vector>

namespace mft {

enum class EnumFilter { Connected, OnePI };

// nExt ∈ {2,4}; loops = number of internal faces. The λ-order is loops for
// 2-point keys and loops+1 for 4-point keys.
struct EnumKey {
    int nExt = 2;
    int loops = 0;
    EnumFilter filter = EnumFilter::Connected;
};

struct EnumOptions {
    int workers = 1;
    std::string cacheDir; // empty: no disk cache
    int loopGuard = 6;    // hard resource guard
};

// All connected genus-0 single-boundary ribbon graphs with 4-valent internal
// vertices, rooted at external half-edge 1, in canonical rooted labelling.
// Duplicate-free and sorted; OnePI additionally filters bridgeless graphs.
std::vector<RibbonGraph> enumerateGraphs(const EnumKey& key, const EnumOptions& opts = {});

long enumerationCount(const EnumKey& key, const EnumOptions& opts = {});

enum class CountKind { G2, G4, PI2, PI4 };

// Exact expansion of the counting generating functions; coefficient k is the
// number of diagrams at λ-order k (coefficients of the (-λ)-expansion).
FormalSeries countingSeries(CountKind kind, int maxOrder);

// λ-order of an enumeration key of the given kind.
int lambdaOrder(CountKind kind, int loops);
EnumKey keyForKind(CountKind kind, int lambdaOrder);

struct CountRow {
    CountKind kind;
    int lambdaOrder = 0;
    long enumerated = 0;
    long series = 0;
    bool match() const { return enumerated == series; }
};

struct CountReport {
    std::vector<CountRow> rows;
    bool allMatch() const {
        for (const auto& r : rows)
            if (!r.match()) return false;
        return true;
    }
};

CountReport verifyCounts(int maxOrder, const EnumOptions& opts = {});

std::string cacheFileName(const EnumKey& key);
const char* filterName(EnumFilter f);
const char* kindName(CountKind k);

} // namespace mft
