#pragma once

// First-acceptance search over sample lattices.
//
// The search algorithms visit samples in a fixed order and stop at the first
// sample whose sigma_0 is <= threshold. With an exact oracle we can find that
// same sample without evaluating every predecessor: sigma_0 is 1-Lipschitz in
// the shift, so one evaluation at the centre of a block of samples rules out
// the whole block when sigma_0(centre) - (block radius) > threshold.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>

namespace nneig::detail {

inline constexpr double kPruneTolerance = 1e-12;

struct LatticeHit {
    std::int64_t i = 0;
    std::int64_t j = 0;
    double value = 0.0;
};

inline bool lex_less(const LatticeHit& a, const LatticeHit& b) {
    return a.i < b.i || (a.i == b.i && a.j < b.j);
}

inline std::optional<LatticeHit> lex_min(const std::optional<LatticeHit>& a, const std::optional<LatticeHit>& b) {
    if (!a) return b;
    if (!b) return a;
    return lex_less(*b, *a) ? b : a;
}

/// Inclusive index box; i is the outer (slow) index.
struct IndexBox {
    std::int64_t i0 = 0, i1 = -1, j0 = 0, j1 = -1;

    bool empty() const { return i1 < i0 || j1 < j0; }
    std::int64_t rows() const { return empty() ? 0 : i1 - i0 + 1; }
    std::int64_t cols() const { return empty() ? 0 : j1 - j0 + 1; }
};

/// Lexicographically first lattice point (i outer, j inner) in `box` with
/// eval(i, j) <= threshold. Lattice points are `spacing` apart; `eval` takes
/// fractional coordinates for block centres.
template <class Eval>
class LatticeSearch {
public:
    LatticeSearch(double spacing, double threshold, Eval eval)
        : spacing_(spacing), threshold_(threshold), eval_(std::move(eval)) {}

    std::optional<LatticeHit> run(const IndexBox& box) { return search(box); }
    std::int64_t evaluations() const { return evaluations_; }

private:
    double evaluate(double i, double j) {
        ++evaluations_;
        return eval_(i, j);
    }

    std::optional<LatticeHit> scan_small(const IndexBox& b) {
        for (std::int64_t i = b.i0; i <= b.i1; ++i)
            for (std::int64_t j = b.j0; j <= b.j1; ++j) {
                const double v = evaluate(static_cast<double>(i), static_cast<double>(j));
                if (v <= threshold_) return LatticeHit{i, j, v};
            }
        return std::nullopt;
    }

    std::optional<LatticeHit> search(IndexBox b) {
        if (b.empty()) return std::nullopt;
        const std::int64_t ni = b.rows(), nj = b.cols();
        if (ni * nj <= 4) return scan_small(b);

        const double ci = 0.5 * static_cast<double>(b.i0 + b.i1);
        const double cj = 0.5 * static_cast<double>(b.j0 + b.j1);
        const double radius =
            0.5 * spacing_ * std::hypot(static_cast<double>(b.i1 - b.i0), static_cast<double>(b.j1 - b.j0));
        if (evaluate(ci, cj) - radius > threshold_ + kPruneTolerance) return std::nullopt;

        const std::int64_t im = b.i0 + (ni - 1) / 2;
        const std::int64_t jm = b.j0 + (nj - 1) / 2;
        const bool split_i = ni > 1, split_j = nj > 1;

        auto halves = [&](std::int64_t lo, std::int64_t hi) -> std::optional<LatticeHit> {
            IndexBox left{lo, hi, b.j0, split_j ? jm : b.j1};
            auto hit = search(left);
            if (split_j) {
                IndexBox right{lo, hit ? hit->i : hi, jm + 1, b.j1};
                hit = lex_min(hit, search(right));
            }
            return hit;
        };

        if (!split_i) return halves(b.i0, b.i1);
        if (auto top = halves(b.i0, im)) return top;
        return halves(im + 1, b.i1);
    }

    double spacing_;
    double threshold_;
    Eval eval_;
    std::int64_t evaluations_ = 0;
};

/// Smallest index t in [0, count) with eval(t) <= threshold, where
/// `radius(a, b)` bounds the distance from the point at (a + b) / 2 to every
/// sample in [a, b].
template <class Eval, class Radius>
class LineSearch {
public:
    LineSearch(double threshold, Eval eval, Radius radius)
        : threshold_(threshold), eval_(std::move(eval)), radius_(std::move(radius)) {}

    std::optional<LatticeHit> run(std::int64_t count) { return search(0, count - 1); }
    std::int64_t evaluations() const { return evaluations_; }

private:
    std::optional<LatticeHit> search(std::int64_t a, std::int64_t b) {
        if (b < a) return std::nullopt;
        if (b - a < 4) {
            for (std::int64_t t = a; t <= b; ++t) {
                ++evaluations_;
                const double v = eval_(static_cast<double>(t));
                if (v <= threshold_) return LatticeHit{t, 0, v};
            }
            return std::nullopt;
        }
        ++evaluations_;
        const double centre = eval_(0.5 * static_cast<double>(a + b));
        if (centre - radius_(a, b) > threshold_ + kPruneTolerance) return std::nullopt;
        const std::int64_t m = a + (b - a) / 2;
        if (auto hit = search(a, m)) return hit;
        return search(m + 1, b);
    }

    double threshold_;
    Eval eval_;
    Radius radius_;
    std::int64_t evaluations_ = 0;
};

}  // namespace nneig::detail
