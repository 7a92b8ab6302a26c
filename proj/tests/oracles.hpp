#pragma once

// Reference computations that share no code with the library paths they check.

#include "support.hpp"

#include <algorithm>

namespace pcdga::testing {

namespace detail {

constexpr long kInfHalves = -1;
constexpr long kUnset = -2;

inline long max_h(long a, long b)
{
    if (a == kInfHalves || b == kInfHalves)
        return kInfHalves;
    return std::max(a, b);
}

inline bool less_h(long a, long b)
{
    if (a == kInfHalves)
        return false;
    return b == kInfHalves || a < b;
}

inline long pair_cost(const Interval& a, const Interval& b)
{
    bool ia = a.death == kInf, ib = b.death == kInf;
    if (ia != ib)
        return kInfHalves;
    long c = 2L * std::abs(a.birth - b.birth);
    if (!ia)
        c = std::max(c, 2L * std::abs(a.death - b.death));
    return c;
}

inline long diag_cost(const Interval& a)
{
    return a.death == kInf ? kInfHalves : static_cast<long>(a.death - a.birth);
}

// Every partial injection a -> b; unmatched bars go to the diagonal.
inline void search(const std::vector<Interval>& a, const std::vector<Interval>& b, std::size_t i,
                   std::vector<bool>& used, long cost, long& best)
{
    if (best >= 0 && !less_h(cost, best))
        return;
    if (i == a.size()) {
        for (std::size_t j = 0; j < b.size(); ++j)
            if (!used[j])
                cost = max_h(cost, diag_cost(b[j]));
        if (best == kUnset || less_h(cost, best))
            best = cost;
        return;
    }
    search(a, b, i + 1, used, max_h(cost, diag_cost(a[i])), best);
    for (std::size_t j = 0; j < b.size(); ++j) {
        if (used[j])
            continue;
        used[j] = true;
        search(a, b, i + 1, used, max_h(cost, pair_cost(a[i], b[j])), best);
        used[j] = false;
    }
}

inline Scalar koszul(int p, int q) { return (p * q) % 2 ? Scalar(-1) : Scalar(1); }

}  // namespace detail

inline HalfValue brute_force_bottleneck(const std::vector<Interval>& a, const std::vector<Interval>& b)
{
    long best = detail::kUnset;
    std::vector<bool> used(b.size(), false);
    detail::search(a, b, 0, used, 0, best);
    return best == detail::kInfHalves ? HalfValue::infinity() : HalfValue::halves(best);
}

inline std::vector<Interval> random_bars(Rng& rng, std::size_t max_count)
{
    std::uniform_int_distribution<std::size_t> count(0, max_count);
    std::uniform_int_distribution<int> birth(0, 6), len(1, 6);
    std::bernoulli_distribution infinite(0.15);
    std::vector<Interval> out;
    for (std::size_t k = count(rng); k > 0; --k) {
        int b = birth(rng);
        out.push_back({b, infinite(rng) ? kInf : b + len(rng)});
    }
    return out;
}

// Bottleneck against brute force on `count` random pairs of at most
// `max_bars` bars each; returns the number of disagreements.
inline int bottleneck_violations(Rng& rng, int count, std::size_t max_bars)
{
    int bad = 0;
    for (int k = 0; k < count; ++k) {
        auto a = random_bars(rng, max_bars);
        auto b = random_bars(rng, max_bars);
        auto r = bottleneck(a, b);
        if (r.value != brute_force_bottleneck(a, b))
            ++bad;
        else if (!r.value.is_inf() && matching_cost(a, b, r.matching) != r.value)
            ++bad;
    }
    return bad;
}

// Graded commutativity, Leibniz and d² on `count` random homogeneous pairs.
inline int algebra_violations(Rng& rng, const FreeCDGA& a, int count)
{
    using detail::koszul;
    int top = a.cap();
    std::uniform_int_distribution<int> deg(0, std::max(0, top - 2));
    int bad = 0;
    for (int k = 0; k < count; ++k) {
        int p = deg(rng);
        std::uniform_int_distribution<int> deg2(0, std::max(0, top - 1 - p));
        int q = deg2(rng);
        Element x = random_element(rng, a, p, 3);
        Element y = random_element(rng, a, q, 3);
        Element xy = a.mul(x, y);
        if (xy != koszul(p, q) * a.mul(y, x))
            ++bad;
        if (a.d(xy) != a.mul(a.d(x), y) + koszul(p, 1) * a.mul(x, a.d(y)))
            ++bad;
        if (!a.d(a.d(x)).is_zero())
            ++bad;
    }
    return bad;
}

// Bars against fresh stage-wise cohomology: alive counts give dimensions and
// ranks of the structure maps.
inline int barcode_violations(const PersistenceCDGA& p, int cap)
{
    ThetaHomology th(p, cap);
    const auto& mod = th.h_module();
    auto b = barcode(mod);
    auto alive = [&](int n, int s, int t) {
        return static_cast<std::size_t>(std::count_if(b.begin(), b.end(), [&](const Bar& x) {
            return x.degree == n && x.birth <= s && (x.death == kInf || x.death > t);
        }));
    };
    int bad = 0;
    for (int s = 0; s <= mod.last; ++s) {
        Cohomology h(p.stage(s).alg, cap);
        for (int n = 0; n <= cap; ++n) {
            if (alive(n, s, s) != h.dim(n))
                ++bad;
            for (int t = s; t <= mod.last; ++t)
                if (alive(n, s, t) != mod.rank(n, s, t))
                    ++bad;
        }
    }
    return bad;
}

}  // namespace pcdga::testing
