#include "ola/hypothesis.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "ola/error.hpp"
#include "ola/rng.hpp"

namespace ola {

std::string_view to_string(HypothesisKind kind) {
    switch (kind) {
        case HypothesisKind::Threshold1D: return "threshold1d";
        case HypothesisKind::Interval1D: return "interval1d";
        case HypothesisKind::Box2D: return "box2d";
        case HypothesisKind::HomogeneousHalfspace: return "halfspace";
    }
    return "unknown";
}

HypothesisKind parse_hypothesis_kind(std::string_view name) {
    if (name == "threshold1d") return HypothesisKind::Threshold1D;
    if (name == "interval1d") return HypothesisKind::Interval1D;
    if (name == "box2d") return HypothesisKind::Box2D;
    if (name == "halfspace") return HypothesisKind::HomogeneousHalfspace;
    throw ConfigError(fmt::format("unknown hypothesis.kind '{}' (expected threshold1d, interval1d, box2d or halfspace)", name));
}

std::size_t HypothesisClass::params_per_hypothesis() const {
    switch (kind) {
        case HypothesisKind::Threshold1D: return 1;
        case HypothesisKind::Interval1D: return 2;
        case HypothesisKind::Box2D: return 4;
        case HypothesisKind::HomogeneousHalfspace: return dim;
    }
    return 0;
}

int HypothesisClass::vc_dimension() const {
    switch (kind) {
        case HypothesisKind::Threshold1D: return 1;
        case HypothesisKind::Interval1D: return 2;
        case HypothesisKind::Box2D: return 3;
        case HypothesisKind::HomogeneousHalfspace: return static_cast<int>(dim);
    }
    return 0;
}

namespace {

Label classify_unchecked(HypothesisKind kind, const double* p, const Point& x) {
    switch (kind) {
        case HypothesisKind::Threshold1D:
            return x[0] >= p[0] ? 1 : 0;
        case HypothesisKind::Interval1D:
            return (x[0] >= p[0] && x[0] <= p[1]) ? 1 : 0;
        case HypothesisKind::Box2D:
            return (x[0] >= p[0] && x[0] <= p[1] && x[1] >= p[2] && x[1] <= p[3]) ? 1 : 0;
        case HypothesisKind::HomogeneousHalfspace: {
            double dot = 0.0;
            for (std::size_t i = 0; i < x.dim(); ++i) dot += p[i] * x[i];
            return dot >= 0.0 ? 1 : 0;
        }
    }
    return 0;
}

void check_dims(const HypothesisClass& cls, std::size_t n_params, const Point& x) {
    if (n_params != cls.params_per_hypothesis()) {
        throw ConfigError(fmt::format("{} expects {} parameters, got {}", to_string(cls.kind),
                                      cls.params_per_hypothesis(), n_params));
    }
    if (x.dim() != cls.dim) {
        throw ConfigError(fmt::format("{} expects {}-dimensional points, got dimension {}",
                                      to_string(cls.kind), cls.dim, x.dim()));
    }
}

}  // namespace

Label classify(const HypothesisClass& cls, std::span<const double> params, const Point& x) {
    check_dims(cls, params.size(), x);
    return classify_unchecked(cls.kind, params.data(), x);
}

Label HypothesisGrid::classify(std::size_t index, const Point& x) const {
    return classify_unchecked(cls_.kind, params_.data() + index * stride_, x);
}

std::size_t HypothesisGrid::nearest(std::span<const double> target) const {
    if (target.size() != stride_) {
        throw ConfigError(fmt::format("expected {} parameters, got {}", stride_, target.size()));
    }
    std::size_t best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t h = 0; h < count_; ++h) {
        double dist = 0.0;
        for (std::size_t j = 0; j < stride_; ++j) {
            const double diff = params_[h * stride_ + j] - target[j];
            dist += diff * diff;
        }
        if (dist < best_dist) {
            best_dist = dist;
            best = h;
        }
    }
    return best;
}

HypothesisGrid build_grid(const HypothesisClass& cls, std::size_t resolution) {
    if (resolution < 2) {
        throw ConfigError(fmt::format("hypothesis.resolution must be >= 2, got {}", resolution));
    }
    if (cls.dim != (cls.kind == HypothesisKind::Box2D ? 2u : 1u) &&
        cls.kind != HypothesisKind::HomogeneousHalfspace) {
        throw ConfigError(fmt::format("{} is not defined on dimension {}", to_string(cls.kind), cls.dim));
    }
    if (cls.kind == HypothesisKind::HomogeneousHalfspace && cls.dim < 2) {
        throw ConfigError("halfspace class needs dimension >= 2");
    }

    HypothesisGrid grid;
    grid.cls_ = cls;
    grid.resolution_ = resolution;
    grid.stride_ = cls.params_per_hypothesis();

    const auto G = resolution;
    const double step = 1.0 / static_cast<double>(G - 1);
    auto axis = [&](std::size_t i) { return static_cast<double>(i) * step; };
    auto& out = grid.params_;

    switch (cls.kind) {
        case HypothesisKind::Threshold1D:
            for (std::size_t i = 0; i < G; ++i) out.push_back(axis(i));
            break;
        case HypothesisKind::Interval1D:
            for (std::size_t i = 0; i < G; ++i)
                for (std::size_t j = i; j < G; ++j) {
                    out.push_back(axis(i));
                    out.push_back(axis(j));
                }
            break;
        case HypothesisKind::Box2D:
            for (std::size_t a = 0; a < G; ++a)
                for (std::size_t b = a; b < G; ++b)
                    for (std::size_t c = 0; c < G; ++c)
                        for (std::size_t d = c; d < G; ++d) {
                            out.insert(out.end(), {axis(a), axis(b), axis(c), axis(d)});
                        }
            break;
        case HypothesisKind::HomogeneousHalfspace:
            if (cls.dim == 2) {
                for (std::size_t i = 0; i < G; ++i) {
                    const double angle = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(G);
                    out.push_back(std::cos(angle));
                    out.push_back(std::sin(angle));
                }
            } else {
                // e_1 first, then fixed-seed uniform directions.
                out.push_back(1.0);
                for (std::size_t j = 1; j < cls.dim; ++j) out.push_back(0.0);
                Rng rng(0x5eed0f5fe4eULL + cls.dim);
                std::vector<double> v(cls.dim);
                for (std::size_t i = 1; i < G; ++i) {
                    double norm = 0.0;
                    do {
                        norm = 0.0;
                        for (auto& c : v) {
                            c = rng.normal();
                            norm += c * c;
                        }
                    } while (norm < 1e-24);
                    norm = std::sqrt(norm);
                    for (double c : v) out.push_back(c / norm);
                }
            }
            break;
    }
    grid.count_ = out.size() / grid.stride_;
    return grid;
}

double sauer_bound(int d, std::uint64_t n) {
    double total = 0.0;
    double binom = 1.0;  // C(n, 0)
    for (int i = 0; i <= d; ++i) {
        if (static_cast<std::uint64_t>(i) > n) break;
        total += binom;
        binom = binom * static_cast<double>(n - static_cast<std::uint64_t>(i)) / static_cast<double>(i + 1);
    }
    return total;
}

double shattering_bound(const HypothesisClass& cls, std::uint64_t n) {
    const auto nd = static_cast<double>(n);
    switch (cls.kind) {
        case HypothesisKind::Threshold1D:
            return nd + 1.0;
        case HypothesisKind::Interval1D:
            return nd * (nd - 1.0) / 2.0 + nd + 1.0;
        case HypothesisKind::Box2D:
            // Axis-aligned rectangles shatter 4 points in diamond position, so
            // the Sauer exponent must be 4 for the bound to hold.
            return sauer_bound(4, n);
        case HypothesisKind::HomogeneousHalfspace:
            return sauer_bound(cls.vc_dimension(), n);
    }
    return 1.0;
}

}  // namespace ola
