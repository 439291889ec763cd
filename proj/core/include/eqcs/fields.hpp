#pragma once

#include "eqcs/lie.hpp"

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

namespace eqcs {

enum class AxisKind { Periodic, Interval };

using GridPoint = std::array<double, 4>;

/// Structured grid on a product of circles and unit intervals.
/// Periodic axes sample i/N, interval axes sample i/(N-1); axis 0 varies fastest.
class Grid {
public:
    Grid(std::vector<int> sizes, std::vector<AxisKind> kinds, int orientation = 1);
    static Grid torus(int d, int n);
    /// T^2 x I with the interval along z.
    static Grid slab(int n_xy, int n_z);

    int dim() const { return static_cast<int>(sizes_.size()); }
    int size(int axis) const { return sizes_[axis]; }
    AxisKind kind(int axis) const { return kinds_[axis]; }
    int orientation() const { return orientation_; }
    std::size_t points() const { return points_; }

    double coord(int axis, int i) const;
    GridPoint point(std::size_t flat) const;
    std::array<int, 4> unflatten(std::size_t flat) const;
    std::size_t flatten(const std::array<int, 4>& idx) const;
    std::size_t stride(int axis) const { return strides_[axis]; }
    /// Quadrature weights for one axis (trapezoid or Simpson).
    std::vector<double> weights(int axis) const;

    bool operator==(const Grid& o) const
    {
        return sizes_ == o.sizes_ && kinds_ == o.kinds_ && orientation_ == o.orientation_;
    }

private:
    std::vector<int> sizes_;
    std::vector<AxisKind> kinds_;
    int orientation_;
    std::vector<std::size_t> strides_;
    std::size_t points_;
};

using MultiIndex = std::vector<int>;
/// Strictly increasing multi-indices of length q in {0..d-1}, lexicographic.
const std::vector<MultiIndex>& multi_indices(int d, int q);

template <class T>
T zero_value();
template <>
inline double zero_value<double>() { return 0.0; }
template <>
inline Mat2 zero_value<Mat2>() { return Mat2::Zero(); }

/// Closed-form components and their partial derivatives.
template <class T>
struct FormGenerator {
    std::function<T(const MultiIndex&, const GridPoint&)> value;
    /// May be empty; then derivatives of derived fields fall back to the sampled path.
    std::function<T(const MultiIndex&, int axis, const GridPoint&)> partial;
    /// Components of the exterior derivative, used in preference to partials.
    std::function<T(const MultiIndex&, const GridPoint&)> exterior;
};

/// Differential form sampled on a grid; components stored for sorted multi-indices only.
/// A degree above the grid dimension has no components and represents the zero form.
template <class T>
class FormField {
public:
    FormField(Grid grid, int degree, std::optional<GroupId> group = std::nullopt);
    static FormField from_generator(Grid grid, int degree, std::optional<GroupId> group,
                                    FormGenerator<T> gen);

    const Grid& grid() const { return grid_; }
    int degree() const { return degree_; }
    std::optional<GroupId> group() const { return group_; }
    std::size_t components() const { return comps_.size(); }
    const MultiIndex& index(std::size_t c) const { return multi_indices(grid_.dim(), degree_)[c]; }
    /// Position of a sorted multi-index, or -1.
    int component_of(const MultiIndex& I) const;

    T& at(std::size_t c, std::size_t pt) { return comps_[c][pt]; }
    const T& at(std::size_t c, std::size_t pt) const { return comps_[c][pt]; }
    std::vector<T>& component(std::size_t c) { return comps_[c]; }
    const std::vector<T>& component(std::size_t c) const { return comps_[c]; }

    const std::shared_ptr<const FormGenerator<T>>& generator() const { return gen_; }
    void set_generator(std::shared_ptr<const FormGenerator<T>> g) { gen_ = std::move(g); }

    FormField operator+(const FormField& o) const;
    FormField operator-(const FormField& o) const;
    FormField scaled(double s) const;
    double max_abs() const;

private:
    Grid grid_;
    int degree_;
    std::optional<GroupId> group_;
    std::vector<std::vector<T>> comps_;
    std::shared_ptr<const FormGenerator<T>> gen_;
};

using AlgebraForm = FormField<Mat2>;
using RealForm = FormField<double>;

/// Exact when a generator with partials is attached; spectral on periodic axes and
/// fourth-order differences on interval axes otherwise.
template <class T>
FormField<T> exterior_derivative(const FormField<T>& w);

/// Matrix-product wedge; (A^A)_{ij} = [A_i, A_j] for a 1-form A.
AlgebraForm wedge(const AlgebraForm& a, const AlgebraForm& b);

/// Real form p(w_1 ^ ... ^ w_r) with the shuffle signs of the wedge.
RealForm p_wedge(const CharacteristicPair& p, const std::vector<const AlgebraForm*>& ws);
RealForm p_wedge(const CharacteristicPair& p, const AlgebraForm& a, const AlgebraForm& b);

/// Oriented integral of a top-degree real form.
double integrate(const RealForm& w);

/// Restriction of a form to the slice axis = index (drops that axis).
template <class T>
FormField<T> restrict_to_slice(const FormField<T>& w, int axis, int index);

/// Real form with closed-form coefficients and partials.
RealForm real_form(const Grid& g, int degree,
                   std::function<double(const MultiIndex&, const GridPoint&)> value,
                   std::function<double(const MultiIndex&, int, const GridPoint&)> partial = {});

class GridMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class DegreeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}
