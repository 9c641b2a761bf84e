#include <doctest.h>

#include "mft/permutation.hpp"

#include <algorithm>
#include <random>

using namespace mft;

namespace {

std::vector<int> range(int n) {
    std::vector<int> v(n);
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i + 1;
    return v;
}

// every permutation of {1..n} as a mapping table
std::vector<std::vector<int>> allPermTables(int n) {
    std::vector<int> img = range(n);
    std::vector<std::vector<int>> out;
    std::sort(img.begin(), img.end());
    do {
        out.push_back(img);
    } while (std::next_permutation(img.begin(), img.end()));
    return out;
}

Permutation fromTable(const std::vector<int>& table) {
    std::map<int, int> m;
    for (std::size_t i = 0; i < table.size(); ++i) m[static_cast<int>(i) + 1] = table[i];
    return Permutation::fromMap(std::move(m));
}

} // namespace

TEST_CASE("cycles of the identity") {
    auto p = Permutation::identity({1, 2});
    CHECK(p.cycles() == std::vector<std::vector<int>>{{1}, {2}});
    CHECK(p.cycleString() == "(1)(2)");
}

TEST_CASE("fish graph vertex cycles are rotation-normalized") {
    auto sigma = Permutation::fromCycles(range(8), {{4, 3, 2, 1}, {8, 7, 6, 5}});
    CHECK(sigma.cycleString() == "(1 4 3 2)(5 8 7 6)");
    CHECK(sigma.apply(4) == 3);
    CHECK(sigma.apply(1) == 4);
}

TEST_CASE("faces of the two-boundary fish") {
    // C(sigma^-1 ∘ alpha) = (1 2 6 7)(3 4 8 5)
    auto sigma = Permutation::fromCycles(range(8), {{4, 3, 2, 1}, {8, 7, 6, 5}});
    auto alpha = Permutation::fromCycles(range(8), {{2, 5}, {4, 7}});
    auto phi = compose(sigma.inverse(), alpha);
    CHECK(phi.cycleString() == "(1 2 6 7)(3 4 8 5)");
}

TEST_CASE("compose basics") {
    auto id = Permutation::identity(range(4));
    auto p = Permutation::fromCycles(range(4), {{1, 2, 3}});
    CHECK(compose(id, p) == p);
    CHECK(compose(p, p.inverse()) == id);
    CHECK_THROWS_AS(compose(p, Permutation::identity(range(3))), std::invalid_argument);
}

TEST_CASE("compose matches explicit function composition on all of S4") {
    auto tables = allPermTables(4);
    for (const auto& ta : tables) {
        for (const auto& tb : tables) {
            auto pa = fromTable(ta);
            auto pb = fromTable(tb);
            auto pc = compose(pa, pb);
            for (int x = 1; x <= 4; ++x)
                REQUIRE(pc.apply(x) == ta[static_cast<std::size_t>(tb[static_cast<std::size_t>(x - 1)] - 1)]);
        }
    }
}

TEST_CASE("inverse") {
    CHECK(Permutation::identity(range(3)).inverse() == Permutation::identity(range(3)));
    auto p = Permutation::fromCycles(range(3), {{1, 2, 3}});
    CHECK(p.inverse() == Permutation::fromCycles(range(3), {{1, 3, 2}}));

    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<int> t = range(8);
        std::shuffle(t.begin(), t.end(), rng);
        auto p8 = fromTable(t);
        CHECK(compose(p8, p8.inverse()) == Permutation::identity(range(8)));
    }
}

TEST_CASE("inverse reverses every cycle") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<int> t = range(9);
        std::shuffle(t.begin(), t.end(), rng);
        auto p = fromTable(t);
        auto inv = p.inverse();
        for (const auto& cyc : p.cycles()) {
            for (std::size_t i = 0; i < cyc.size(); ++i)
                REQUIRE(inv.apply(cyc[(i + 1) % cyc.size()]) == cyc[i]);
        }
    }
}

TEST_CASE("restrict_cycles") {
    auto id = Permutation::identity(range(6));
    CHECK(id.restrictCycles({2, 4}) == Permutation::identity({2, 4}));

    // fish contraction: alpha'∘sigma restricted to the external half-edges
    auto sigma = Permutation::fromCycles(range(8), {{4, 3, 2, 1}, {8, 7, 6, 5}});
    auto alphaPrime = Permutation::fromCycles(range(8), {{3, 5}, {4, 8}});
    auto merged = compose(alphaPrime, sigma);
    auto vertex = merged.restrictCycles({1, 2, 6, 7});
    CHECK(vertex.cycles().size() == 1);
    CHECK(vertex.cycles()[0].size() == 4);
    // the restriction has the orientation of a single quartic vertex: its
    // inverse walks the boundary order 1,2,6,7
    auto walk = vertex.inverse();
    CHECK(walk.apply(1) == 2);
    CHECK(walk.apply(2) == 6);
    CHECK(walk.apply(6) == 7);
    CHECK(walk.apply(7) == 1);
}

TEST_CASE("restriction matches an element-skipping oracle on random permutations") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<int> t = range(8);
        std::shuffle(t.begin(), t.end(), rng);
        auto p = fromTable(t);
        std::vector<int> keep;
        for (int x = 1; x <= 8; ++x)
            if (rng() % 2) keep.push_back(x);
        if (keep.empty()) continue;
        auto r = p.restrictCycles(keep);
        for (int x : keep) {
            int y = p.apply(x);
            while (std::find(keep.begin(), keep.end(), y) == keep.end()) y = p.apply(y);
            REQUIRE(r.apply(x) == y);
        }
    }
}

TEST_CASE("restriction is idempotent under nested subsets") {
    auto p = Permutation::fromCycles(range(8), {{1, 5, 3, 7}, {2, 6, 4, 8}});
    auto r1 = p.restrictCycles({1, 2, 3, 4, 5});
    CHECK(p.restrictCycles(p.domain()) == p);
    CHECK(r1.restrictCycles({1, 3, 5}) == p.restrictCycles({1, 3, 5}));
}

TEST_CASE("canonical cycle form round-trips through parse and print") {
    auto p = Permutation::fromCycles(range(8), {{4, 3, 2, 1}, {8, 7, 6, 5}});
    auto cycles = Permutation::parseCycles(p.cycleString());
    CHECK(Permutation::fromCycles(range(8), cycles) == p);
    CHECK(Permutation::fromCycles(range(8), cycles).cycleString() == p.cycleString());
}
