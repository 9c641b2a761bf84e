#pragma once

#include <map>
#include <string>
#include <vector>

namespace mft {

// A bijection on a finite set of positive integer labels.
//
// Cycle output is always in canonical cycle form: each cycle rotated to start
// at its minimum, cycles sorted by minimum, fixed points kept as 1-cycles.
class Permutation {
public:
    Permutation() = default;

    static Permutation identity(const std::vector<int>& domain);
    // Cycles need not cover the domain; missing labels become fixed points.
    static Permutation fromCycles(const std::vector<int>& domain,
                                  const std::vector<std::vector<int>>& cycles);
    static Permutation fromMap(std::map<int, int> mapping);

    int apply(int x) const;
    int applyInverse(int x) const;
    bool contains(int x) const { return map_.count(x) != 0; }
    std::vector<int> domain() const;
    std::size_t size() const { return map_.size(); }
    bool empty() const { return map_.empty(); }

    std::vector<std::vector<int>> cycles() const;
    Permutation inverse() const;
    bool isInvolution() const;
    bool isIdentity() const;

    // Keep only the given labels, deleting all others from each cycle.
    Permutation restrictCycles(const std::vector<int>& keep) const;

    bool operator==(const Permutation& o) const { return map_ == o.map_; }
    bool operator!=(const Permutation& o) const { return map_ != o.map_; }
    bool operator<(const Permutation& o) const { return map_ < o.map_; }

    // "(1 4 3 2)(5 8 7 6)"; fixed points printed explicitly as "(1)".
    std::string cycleString() const;
    static std::vector<std::vector<int>> parseCycles(const std::string& text);

    const std::map<int, int>& mapping() const { return map_; }

private:
    std::map<int, int> map_;
};

// (p∘q)(x) = p(q(x)); domains must agree.
Permutation compose(const Permutation& p, const Permutation& q);

} // namespace mft
