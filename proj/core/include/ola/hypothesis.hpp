#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ola {

// Binary labels are plain ints restricted to {0, 1}.
using Label = int;

/// A point of the instance space: [0,1], [0,1]^2, or the unit sphere in R^d.
class Point {
public:
    Point() = default;
    Point(std::initializer_list<double> coords) : coords_(coords) {}
    explicit Point(std::vector<double> coords) : coords_(std::move(coords)) {}

    [[nodiscard]] std::size_t dim() const { return coords_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const { return coords_[i]; }
    [[nodiscard]] std::span<const double> coords() const { return coords_; }

    friend bool operator==(const Point&, const Point&) = default;

private:
    std::vector<double> coords_;
};

enum class HypothesisKind { Threshold1D, Interval1D, Box2D, HomogeneousHalfspace };

[[nodiscard]] std::string_view to_string(HypothesisKind kind);
[[nodiscard]] HypothesisKind parse_hypothesis_kind(std::string_view name);

/// A parametric hypothesis class over a fixed instance space.
///
/// `dim` is the instance-space dimension; it is 1 for the interval classes,
/// 2 for boxes and d for halfspaces on the sphere.
struct HypothesisClass {
    HypothesisKind kind = HypothesisKind::Threshold1D;
    std::size_t dim = 1;

    static HypothesisClass threshold() { return {HypothesisKind::Threshold1D, 1}; }
    static HypothesisClass interval() { return {HypothesisKind::Interval1D, 1}; }
    static HypothesisClass box() { return {HypothesisKind::Box2D, 2}; }
    static HypothesisClass halfspace(std::size_t d) { return {HypothesisKind::HomogeneousHalfspace, d}; }

    [[nodiscard]] std::size_t params_per_hypothesis() const;
    [[nodiscard]] int vc_dimension() const;

    friend bool operator==(const HypothesisClass&, const HypothesisClass&) = default;
};

/// Label of x under the hypothesis with the given parameters. Points on the
/// decision boundary get label 1.
///
/// Parameter layouts: threshold (z) = [z,1]; interval (z1,z2) = [z1,z2];
/// box (x1,x2,y1,y2) = [x1,x2]x[y1,y2]; halfspace (u_1..u_d) = 1[u.x >= 0].
///
/// Throws ConfigError when the parameter count or the point dimension does
/// not match the class.
[[nodiscard]] Label classify(const HypothesisClass& cls, std::span<const double> params, const Point& x);

/// Finite, deterministically ordered cover of a hypothesis class.
class HypothesisGrid {
public:
    [[nodiscard]] const HypothesisClass& hypothesis_class() const { return cls_; }
    [[nodiscard]] std::size_t resolution() const { return resolution_; }
    [[nodiscard]] std::size_t size() const { return count_; }
    [[nodiscard]] std::size_t params_per_hypothesis() const { return stride_; }

    [[nodiscard]] std::span<const double> params(std::size_t index) const {
        return {params_.data() + index * stride_, stride_};
    }

    // Hot path: no dimension validation beyond what classify() does once per grid.
    [[nodiscard]] Label classify(std::size_t index, const Point& x) const;

    // Index of the grid hypothesis closest (Euclidean, in parameter space) to `params`.
    [[nodiscard]] std::size_t nearest(std::span<const double> params) const;

private:
    friend HypothesisGrid build_grid(const HypothesisClass& cls, std::size_t resolution);

    HypothesisClass cls_;
    std::size_t resolution_ = 0;
    std::size_t stride_ = 0;
    std::size_t count_ = 0;
    std::vector<double> params_;
};

/// Grid with spacing 1/(G-1) per parameter axis over [0,1] (z1 <= z2 for
/// intervals and box sides), or G directions on the unit sphere for
/// halfspaces. Throws ConfigError for G < 2.
[[nodiscard]] HypothesisGrid build_grid(const HypothesisClass& cls, std::size_t resolution);

/// Upper bound on the n-th shattering coefficient of the (continuous) class.
[[nodiscard]] double shattering_bound(const HypothesisClass& cls, std::uint64_t n);

/// Sum_{i=0..d} C(n, i).
[[nodiscard]] double sauer_bound(int d, std::uint64_t n);

}  // namespace ola
