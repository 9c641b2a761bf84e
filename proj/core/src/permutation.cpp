#include "mft/permutation.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace mft {

Permutation Permutation::identity(const std::vector<int>& domain) {
    Permutation p;
    for (int x : domain) p.map_[x] = x;
    return p;
}

Permutation Permutation::fromCycles(const std::vector<int>& domain,
                                    const std::vector<std::vector<int>>& cycles) {
    Permutation p = identity(domain);
    std::set<int> seen;
    for (const auto& cyc : cycles) {
        for (std::size_t i = 0; i < cyc.size(); ++i) {
            int from = cyc[i];
            int to = cyc[(i + 1) % cyc.size()];
            if (!p.map_.count(from))
                throw std::invalid_argument("cycle label outside domain: " + std::to_string(from));
            if (!seen.insert(from).second)
                throw std::invalid_argument("label repeated across cycles: " + std::to_string(from));
            p.map_[from] = to;
        }
    }
    return p;
}

Permutation Permutation::fromMap(std::map<int, int> mapping) {
    std::set<int> image;
    for (const auto& [k, v] : mapping) {
        if (!mapping.count(v))
            throw std::invalid_argument("image outside domain: " + std::to_string(v));
        if (!image.insert(v).second)
            throw std::invalid_argument("mapping is not injective at " + std::to_string(v));
    }
    Permutation p;
    p.map_ = std::move(mapping);
    return p;
}

int Permutation::apply(int x) const {
    auto it = map_.find(x);
    if (it == map_.end())
        throw std::out_of_range("label not in permutation domain: " + std::to_string(x));
    return it->second;
}

int Permutation::applyInverse(int x) const {
    for (const auto& [k, v] : map_)
        if (v == x) return k;
    throw std::out_of_range("label not in permutation image: " + std::to_string(x));
}

std::vector<int> Permutation::domain() const {
    std::vector<int> d;
    d.reserve(map_.size());
    for (const auto& [k, v] : map_) d.push_back(k);
    return d;
}

std::vector<std::vector<int>> Permutation::cycles() const {
    std::vector<std::vector<int>> out;
    std::set<int> seen;
    for (const auto& [start, unused] : map_) {
        if (seen.count(start)) continue;
        std::vector<int> cyc;
        int x = start;
        do {
            cyc.push_back(x);
            seen.insert(x);
            x = map_.at(x);
        } while (x != start);
        out.push_back(std::move(cyc));
    }
    // map_ iterates in increasing order, so each cycle already starts at its
    // minimum and cycles are sorted by minimum.
    return out;
}

Permutation Permutation::inverse() const {
    std::map<int, int> inv;
    for (const auto& [k, v] : map_) inv[v] = k;
    Permutation p;
    p.map_ = std::move(inv);
    return p;
}

bool Permutation::isInvolution() const {
    for (const auto& [k, v] : map_)
        if (map_.at(v) != k) return false;
    return true;
}

bool Permutation::isIdentity() const {
    for (const auto& [k, v] : map_)
        if (k != v) return false;
    return true;
}

Permutation Permutation::restrictCycles(const std::vector<int>& keep) const {
    std::set<int> keepSet(keep.begin(), keep.end());
    for (int x : keep)
        if (!map_.count(x))
            throw std::invalid_argument("restriction label outside domain: " + std::to_string(x));
    std::map<int, int> res;
    for (int x : keep) {
        int y = map_.at(x);
        while (!keepSet.count(y)) y = map_.at(y);
        res[x] = y;
    }
    Permutation p;
    p.map_ = std::move(res);
    return p;
}

std::string Permutation::cycleString() const {
    std::ostringstream os;
    for (const auto& cyc : cycles()) {
        os << '(';
        for (std::size_t i = 0; i < cyc.size(); ++i) {
            if (i) os << ' ';
            os << cyc[i];
        }
        os << ')';
    }
    return os.str();
}

std::vector<std::vector<int>> Permutation::parseCycles(const std::string& text) {
    std::vector<std::vector<int>> cycles;
    std::size_t i = 0;
    auto skipWs = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
    skipWs();
    while (i < text.size()) {
        if (text[i] != '(')
            throw std::invalid_argument("expected '(' in cycle string: " + text);
        ++i;
        std::vector<int> cyc;
        skipWs();
        while (i < text.size() && text[i] != ')') {
            std::size_t j = i;
            while (j < text.size() && (std::isdigit(static_cast<unsigned char>(text[j])))) ++j;
            if (j == i) throw std::invalid_argument("expected label in cycle string: " + text);
            cyc.push_back(std::stoi(text.substr(i, j - i)));
            i = j;
            skipWs();
            if (i < text.size() && text[i] == ',') { ++i; skipWs(); }
        }
        if (i == text.size()) throw std::invalid_argument("unterminated cycle: " + text);
        ++i; // ')'
        if (!cyc.empty()) cycles.push_back(std::move(cyc));
        skipWs();
    }
    return cycles;
}

Permutation compose(const Permutation& p, const Permutation& q) {
    if (p.mapping().size() != q.mapping().size())
        throw std::invalid_argument("compose: domain mismatch");
    std::map<int, int> m;
    for (const auto& [x, qx] : q.mapping()) m[x] = p.apply(qx);
    return Permutation::fromMap(std::move(m));
}

} // namespace mft
