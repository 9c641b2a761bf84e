#pragma once

#include "mft/rational.hpp"

#include <vector>
#include <stdexcept>

namespace mft {

// Dense truncated power series with exact rational coefficients.
// All operations truncate at the common order n(); there is no O() tracking.
class FormalSeries {
public:
    FormalSeries() = default;
    explicit FormalSeries(std::size_t order) : c_(order, Rat(0)) {}
    FormalSeries(std::vector<Rat> coeffs) : c_(std::move(coeffs)) {}

    static FormalSeries constant(const Rat& a, std::size_t order) {
        FormalSeries s(order);
        if (order > 0) s.c_[0] = a;
        return s;
    }
    static FormalSeries x(std::size_t order) {
        FormalSeries s(order);
        if (order > 1) s.c_[1] = 1;
        return s;
    }

    std::size_t order() const { return c_.size(); }
    const Rat& operator[](std::size_t k) const { return c_.at(k); }
    Rat& operator[](std::size_t k) { return c_.at(k); }
    const std::vector<Rat>& coeffs() const { return c_; }

    FormalSeries operator+(const FormalSeries& o) const {
        FormalSeries r(std::min(order(), o.order()));
        for (std::size_t k = 0; k < r.order(); ++k) r.c_[k] = c_[k] + o.c_[k];
        return r;
    }
    FormalSeries operator-(const FormalSeries& o) const {
        FormalSeries r(std::min(order(), o.order()));
        for (std::size_t k = 0; k < r.order(); ++k) r.c_[k] = c_[k] - o.c_[k];
        return r;
    }
    FormalSeries operator*(const FormalSeries& o) const {
        FormalSeries r(std::min(order(), o.order()));
        for (std::size_t i = 0; i < r.order(); ++i) {
            if (c_[i] == 0) continue;
            for (std::size_t j = 0; i + j < r.order(); ++j)
                if (o.c_[j] != 0) r.c_[i + j] += c_[i] * o.c_[j];
        }
        return r;
    }
    FormalSeries scaled(const Rat& a) const {
        FormalSeries r = *this;
        for (auto& v : r.c_) v *= a;
        return r;
    }

    // Multiplicative inverse; requires a nonzero constant term.
    FormalSeries inverse() const {
        if (order() == 0 || c_[0] == 0)
            throw std::domain_error("series inverse needs a unit constant term");
        FormalSeries r(order());
        r.c_[0] = 1 / c_[0];
        for (std::size_t n = 1; n < order(); ++n) {
            Rat s(0);
            for (std::size_t k = 1; k <= n; ++k) s += c_[k] * r.c_[n - k];
            r.c_[n] = -s / c_[0];
        }
        return r;
    }

    // Square root by Newton iteration y <- (y + a/y)/2 on truncated series.
    // Requires constant term 1 (sufficient for the counting generating functions).
    FormalSeries sqrt1() const {
        if (order() == 0 || c_[0] != 1)
            throw std::domain_error("series sqrt requires constant term 1");
        FormalSeries y = constant(1, order());
        for (std::size_t it = 0; it < order() + 2; ++it) {
            FormalSeries next = (y + (*this) * y.inverse()).scaled(Rat(1, 2));
            if (next.c_ == y.c_) break;
            y = next;
        }
        return y;
    }

    // Divide by x^k; the first k coefficients must vanish.
    FormalSeries shiftDown(std::size_t k) const {
        for (std::size_t i = 0; i < k && i < order(); ++i)
            if (c_[i] != 0) throw std::domain_error("shiftDown would drop nonzero terms");
        FormalSeries r(order());
        for (std::size_t i = k; i < order(); ++i) r.c_[i - k] = c_[i];
        return r;
    }
    // Multiply by x^k.
    FormalSeries shiftUp(std::size_t k) const {
        FormalSeries r(order());
        for (std::size_t i = 0; i + k < order(); ++i) r.c_[i + k] = c_[i];
        return r;
    }

    FormalSeries pow(unsigned e) const {
        FormalSeries r = constant(1, order());
        FormalSeries b = *this;
        while (e) {
            if (e & 1u) r = r * b;
            b = b * b;
            e >>= 1u;
        }
        return r;
    }

private:
    std::vector<Rat> c_;
};

} // namespace mft
