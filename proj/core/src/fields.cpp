#include "eqcs/fields.hpp"
#include "eqcs/quadrature.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace eqcs {

Grid::Grid(std::vector<int> sizes, std::vector<AxisKind> kinds, int orientation)
    : sizes_(std::move(sizes)), kinds_(std::move(kinds)), orientation_(orientation)
{
    if (sizes_.empty() || sizes_.size() > 4)
        throw std::invalid_argument("grid dimension must be between 1 and 4");
    if (sizes_.size() != kinds_.size())
        throw std::invalid_argument("grid sizes and axis kinds differ in length");
    if (orientation_ != 1 && orientation_ != -1)
        throw std::invalid_argument("grid orientation must be +1 or -1");
    points_ = 1;
    for (int n : sizes_) {
        if (n < 8)
            throw std::invalid_argument("grid size " + std::to_string(n) + " is below the minimum of 8");
        strides_.push_back(points_);
        points_ *= static_cast<std::size_t>(n);
    }
}

Grid Grid::torus(int d, int n)
{
    return Grid(std::vector<int>(d, n), std::vector<AxisKind>(d, AxisKind::Periodic));
}

Grid Grid::slab(int n_xy, int n_z)
{
    return Grid({n_xy, n_xy, n_z}, {AxisKind::Periodic, AxisKind::Periodic, AxisKind::Interval});
}

double Grid::coord(int axis, int i) const
{
    if (kinds_[axis] == AxisKind::Periodic)
        return static_cast<double>(i) / sizes_[axis];
    return static_cast<double>(i) / (sizes_[axis] - 1);
}

std::array<int, 4> Grid::unflatten(std::size_t flat) const
{
    std::array<int, 4> idx{0, 0, 0, 0};
    for (int a = 0; a < dim(); ++a) {
        idx[a] = static_cast<int>(flat % sizes_[a]);
        flat /= sizes_[a];
    }
    return idx;
}

std::size_t Grid::flatten(const std::array<int, 4>& idx) const
{
    std::size_t f = 0;
    for (int a = 0; a < dim(); ++a)
        f += strides_[a] * static_cast<std::size_t>(idx[a]);
    return f;
}

GridPoint Grid::point(std::size_t flat) const
{
    auto idx = unflatten(flat);
    GridPoint p{0, 0, 0, 0};
    for (int a = 0; a < dim(); ++a)
        p[a] = coord(a, idx[a]);
    return p;
}

std::vector<double> Grid::weights(int axis) const
{
    return kinds_[axis] == AxisKind::Periodic ? trapezoid_weights(sizes_[axis])
                                              : simpson_weights(sizes_[axis]);
}

const std::vector<MultiIndex>& multi_indices(int d, int q)
{
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::vector<MultiIndex>> cache;
    std::lock_guard lock(mu);
    auto key = std::make_pair(d, q);
    auto it = cache.find(key);
    if (it != cache.end())
        return it->second;
    std::vector<MultiIndex> out;
    if (q >= 0 && q <= d) {
        MultiIndex cur;
        std::function<void(int)> rec = [&](int start) {
            if (static_cast<int>(cur.size()) == q) {
                out.push_back(cur);
                return;
            }
            for (int i = start; i < d; ++i) {
                cur.push_back(i);
                rec(i + 1);
                cur.pop_back();
            }
        };
        rec(0);
    }
    return cache.emplace(key, std::move(out)).first->second;
}

template <class T>
FormField<T>::FormField(Grid grid, int degree, std::optional<GroupId> group)
    : grid_(std::move(grid)), degree_(degree), group_(group)
{
    if (degree_ < 0)
        throw DegreeError("negative form degree");
    comps_.assign(multi_indices(grid_.dim(), degree_).size(),
                  std::vector<T>(grid_.points(), zero_value<T>()));
}

template <class T>
FormField<T> FormField<T>::from_generator(Grid grid, int degree, std::optional<GroupId> group,
                                          FormGenerator<T> gen)
{
    FormField<T> f(std::move(grid), degree, group);
    for (std::size_t c = 0; c < f.components(); ++c) {
        const auto& I = f.index(c);
        for (std::size_t pt = 0; pt < f.grid().points(); ++pt)
            f.at(c, pt) = gen.value(I, f.grid().point(pt));
    }
    f.gen_ = std::make_shared<const FormGenerator<T>>(std::move(gen));
    return f;
}

template <class T>
int FormField<T>::component_of(const MultiIndex& I) const
{
    const auto& all = multi_indices(grid_.dim(), degree_);
    auto it = std::find(all.begin(), all.end(), I);
    return it == all.end() ? -1 : static_cast<int>(it - all.begin());
}

template <class T>
FormField<T> FormField<T>::operator+(const FormField& o) const
{
    if (!(grid_ == o.grid_) || degree_ != o.degree_)
        throw GridMismatch("form sum needs equal grids and degrees");
    FormField r(grid_, degree_, group_);
    for (std::size_t c = 0; c < comps_.size(); ++c)
        for (std::size_t p = 0; p < grid_.points(); ++p)
            r.comps_[c][p] = comps_[c][p] + o.comps_[c][p];
    return r;
}

template <class T>
FormField<T> FormField<T>::operator-(const FormField& o) const
{
    return *this + o.scaled(-1.0);
}

template <class T>
FormField<T> FormField<T>::scaled(double s) const
{
    FormField r(grid_, degree_, group_);
    for (std::size_t c = 0; c < comps_.size(); ++c)
        for (std::size_t p = 0; p < grid_.points(); ++p)
            r.comps_[c][p] = comps_[c][p] * s;
    return r;
}

namespace {

double abs_value(double x) { return std::abs(x); }
double abs_value(const Mat2& m) { return mat::norm(m); }

}

template <class T>
double FormField<T>::max_abs() const
{
    double m = 0.0;
    for (const auto& comp : comps_)
        for (const auto& v : comp)
            m = std::max(m, abs_value(v));
    return m;
}

template class FormField<double>;
template class FormField<Mat2>;

namespace {

class SpectralPlans {
public:
    static SpectralPlans& instance()
    {
        static SpectralPlans s;
        return s;
    }

    void differentiate(std::vector<cd>& line)
    {
        std::lock_guard lock(mu_);
        const int n = static_cast<int>(line.size());
        auto& e = entry(n);
        for (int i = 0; i < n; ++i) {
            e.buf[i][0] = line[i].real();
            e.buf[i][1] = line[i].imag();
        }
        fftw_execute(e.fwd);
        for (int k = 0; k < n; ++k) {
            int kk = k <= n / 2 ? k : k - n;
            if (n % 2 == 0 && k == n / 2)
                kk = 0;
            double f = 2.0 * std::numbers::pi * kk / n;
            double re = e.buf[k][0], im = e.buf[k][1];
            e.buf[k][0] = -f * im;
            e.buf[k][1] = f * re;
        }
        fftw_execute(e.bwd);
        for (int i = 0; i < n; ++i)
            line[i] = cd(e.buf[i][0], e.buf[i][1]);
    }

private:
    struct Entry {
        fftw_complex* buf;
        fftw_plan fwd;
        fftw_plan bwd;
    };
    Entry& entry(int n)
    {
        auto it = plans_.find(n);
        if (it != plans_.end())
            return it->second;
        Entry e;
        e.buf = fftw_alloc_complex(n);
        e.fwd = fftw_plan_dft_1d(n, e.buf, e.buf, FFTW_FORWARD, FFTW_ESTIMATE);
        e.bwd = fftw_plan_dft_1d(n, e.buf, e.buf, FFTW_BACKWARD, FFTW_ESTIMATE);
        return plans_.emplace(n, e).first->second;
    }
    std::mutex mu_;
    std::map<int, Entry> plans_;
};

void fd_line(std::vector<cd>& line)
{
    const int n = static_cast<int>(line.size());
    const double h = 1.0 / (n - 1);
    std::vector<cd> out(n);
    auto f = [&](int i) { return line[i]; };
    out[0] = (-25.0 * f(0) + 48.0 * f(1) - 36.0 * f(2) + 16.0 * f(3) - 3.0 * f(4)) / (12.0 * h);
    out[1] = (-3.0 * f(0) - 10.0 * f(1) + 18.0 * f(2) - 6.0 * f(3) + f(4)) / (12.0 * h);
    for (int i = 2; i < n - 2; ++i)
        out[i] = (f(i - 2) - 8.0 * f(i - 1) + 8.0 * f(i + 1) - f(i + 2)) / (12.0 * h);
    out[n - 2] = (3.0 * f(n - 1) + 10.0 * f(n - 2) - 18.0 * f(n - 3) + 6.0 * f(n - 4) - f(n - 5)) / (12.0 * h);
    out[n - 1] = (25.0 * f(n - 1) - 48.0 * f(n - 2) + 36.0 * f(n - 3) - 16.0 * f(n - 4) + 3.0 * f(n - 5)) / (12.0 * h);
    line = std::move(out);
}

int channels(double) { return 1; }
int channels(const Mat2&) { return 4; }
cd get_channel(double v, int) { return cd(v, 0.0); }
cd get_channel(const Mat2& m, int c) { return m(c / 2, c % 2); }
void set_channel(double& v, int, cd x) { v = x.real(); }
void set_channel(Mat2& m, int c, cd x) { m(c / 2, c % 2) = x; }

template <class T>
std::vector<T> partial_sampled(const Grid& g, const std::vector<T>& data, int axis)
{
    std::vector<T> out(data.size(), zero_value<T>());
    const int n = g.size(axis);
    const std::size_t stride = g.stride(axis);
    const int nch = channels(T{});
    std::vector<cd> line(n);
    for (std::size_t base = 0; base < g.points(); ++base) {
        if (g.unflatten(base)[axis] != 0)
            continue;
        for (int ch = 0; ch < nch; ++ch) {
            for (int i = 0; i < n; ++i)
                line[i] = get_channel(data[base + i * stride], ch);
            if (g.kind(axis) == AxisKind::Periodic)
                SpectralPlans::instance().differentiate(line);
            else
                fd_line(line);
            for (int i = 0; i < n; ++i)
                set_channel(out[base + i * stride], ch, line[i]);
        }
    }
    return out;
}

}

template <class T>
FormField<T> exterior_derivative(const FormField<T>& w)
{
    const Grid& g = w.grid();
    const int q = w.degree();
    if (q >= g.dim())
        throw DegreeError("exterior derivative of a top-degree form");
    FormField<T> out(g, q + 1, w.group());
    const auto& gen = w.generator();
    if (gen && gen->exterior) {
        auto base = gen;
        FormGenerator<T> dg;
        dg.value = [base](const MultiIndex& J, const GridPoint& x) { return base->exterior(J, x); };
        return FormField<T>::from_generator(g, q + 1, w.group(), std::move(dg));
    }
    if (gen && gen->partial) {
        auto base = gen;
        FormGenerator<T> dg;
        dg.value = [base](const MultiIndex& J, const GridPoint& x) {
            T s = zero_value<T>();
            for (std::size_t k = 0; k < J.size(); ++k) {
                MultiIndex I;
                for (std::size_t m = 0; m < J.size(); ++m)
                    if (m != k)
                        I.push_back(J[m]);
                T d = base->partial(I, J[k], x);
                s = (k % 2 == 0) ? T(s + d) : T(s - d);
            }
            return s;
        };
        return FormField<T>::from_generator(g, q + 1, w.group(), std::move(dg));
    }
    for (std::size_t c = 0; c < out.components(); ++c) {
        const auto& J = out.index(c);
        for (std::size_t k = 0; k < J.size(); ++k) {
            MultiIndex I;
            for (std::size_t m = 0; m < J.size(); ++m)
                if (m != k)
                    I.push_back(J[m]);
            int ci = w.component_of(I);
            auto d = partial_sampled(g, w.component(ci), J[k]);
            auto& dst = out.component(c);
            for (std::size_t p = 0; p < g.points(); ++p)
                dst[p] = (k % 2 == 0) ? T(dst[p] + d[p]) : T(dst[p] - d[p]);
        }
    }
    return out;
}

template FormField<double> exterior_derivative(const FormField<double>&);
template FormField<Mat2> exterior_derivative(const FormField<Mat2>&);

namespace {

int perm_sign(std::vector<int> v)
{
    int s = 1;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j)
            if (v[i] > v[j])
                s = -s;
    return s;
}

/// All ways to split J into consecutive blocks of the given sizes, each block sorted.
struct Shuffle {
    std::vector<MultiIndex> parts;
    int sign;
};

std::vector<Shuffle> shuffles(const MultiIndex& J, const std::vector<int>& sizes)
{
    std::vector<Shuffle> out;
    std::vector<MultiIndex> parts(sizes.size());
    std::vector<int> owner(J.size(), -1);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t part, std::size_t) {
        if (part == sizes.size()) {
            std::vector<MultiIndex> ps(sizes.size());
            for (std::size_t i = 0; i < J.size(); ++i)
                ps[owner[i]].push_back(J[i]);
            std::vector<int> order;
            for (const auto& p : ps)
                for (int x : p)
                    order.push_back(x);
            out.push_back({ps, perm_sign(order)});
            return;
        }
        std::vector<std::size_t> free;
        for (std::size_t i = 0; i < J.size(); ++i)
            if (owner[i] < 0)
                free.push_back(i);
        const int need = sizes[part];
        std::vector<int> pick(need);
        std::function<void(std::size_t, int)> choose = [&](std::size_t start, int left) {
            if (left == 0) {
                rec(part + 1, 0);
                return;
            }
            for (std::size_t f = start; f < free.size(); ++f) {
                owner[free[f]] = static_cast<int>(part);
                choose(f + 1, left - 1);
                owner[free[f]] = -1;
            }
        };
        choose(0, need);
    };
    rec(0, 0);
    return out;
}

void check_same_grid(const Grid& a, const Grid& b)
{
    if (!(a == b))
        throw GridMismatch("forms live on different grids");
}

}

AlgebraForm wedge(const AlgebraForm& a, const AlgebraForm& b)
{
    check_same_grid(a.grid(), b.grid());
    const int q = a.degree() + b.degree();
    if (q > a.grid().dim())
        throw DegreeError("wedge degree exceeds grid dimension");
    AlgebraForm out(a.grid(), q, a.group());
    for (std::size_t c = 0; c < out.components(); ++c) {
        for (const auto& sh : shuffles(out.index(c), {a.degree(), b.degree()})) {
            int ia = a.component_of(sh.parts[0]);
            int ib = b.component_of(sh.parts[1]);
            for (std::size_t p = 0; p < a.grid().points(); ++p)
                out.at(c, p) += static_cast<double>(sh.sign) * (a.at(ia, p) * b.at(ib, p));
        }
    }
    return out;
}

RealForm p_wedge(const CharacteristicPair& p, const std::vector<const AlgebraForm*>& ws)
{
    if (static_cast<int>(ws.size()) != p.degree())
        throw std::invalid_argument("p_wedge arity differs from the pair degree");
    int q = 0;
    std::vector<int> sizes;
    for (const auto* w : ws) {
        check_same_grid(ws[0]->grid(), w->grid());
        if (w->group() && *w->group() != p.group())
            throw GroupMismatch("p_wedge argument group differs from the pair");
        q += w->degree();
        sizes.push_back(w->degree());
    }
    const Grid& g = ws[0]->grid();
    if (q > g.dim())
        throw DegreeError("p_wedge degree exceeds grid dimension");
    RealForm out(g, q);
    std::vector<Mat2> args(ws.size());
    for (std::size_t c = 0; c < out.components(); ++c) {
        auto shs = shuffles(out.index(c), sizes);
        std::vector<std::vector<int>> comp_ids;
        for (const auto& sh : shs) {
            std::vector<int> ids;
            for (std::size_t k = 0; k < ws.size(); ++k)
                ids.push_back(ws[k]->component_of(sh.parts[k]));
            comp_ids.push_back(ids);
        }
        for (std::size_t pt = 0; pt < g.points(); ++pt) {
            double s = 0.0;
            for (std::size_t h = 0; h < shs.size(); ++h) {
                for (std::size_t k = 0; k < ws.size(); ++k)
                    args[k] = ws[k]->at(comp_ids[h][k], pt);
                s += shs[h].sign * p(args);
            }
            out.at(c, pt) = s;
        }
    }
    return out;
}

RealForm p_wedge(const CharacteristicPair& p, const AlgebraForm& a, const AlgebraForm& b)
{
    return p_wedge(p, std::vector<const AlgebraForm*>{&a, &b});
}

double integrate(const RealForm& w)
{
    const Grid& g = w.grid();
    if (w.degree() != g.dim())
        throw DegreeError("integrate needs a top-degree form");
    std::vector<std::vector<double>> wt;
    for (int a = 0; a < g.dim(); ++a)
        wt.push_back(g.weights(a));
    std::vector<double> terms(g.points());
    for (std::size_t p = 0; p < g.points(); ++p) {
        auto idx = g.unflatten(p);
        double ww = 1.0;
        for (int a = 0; a < g.dim(); ++a)
            ww *= wt[a][idx[a]];
        terms[p] = ww * w.at(0, p);
    }
    return g.orientation() * pairwise_sum(terms);
}

template <class T>
FormField<T> restrict_to_slice(const FormField<T>& w, int axis, int index)
{
    const Grid& g = w.grid();
    std::vector<int> sizes;
    std::vector<AxisKind> kinds;
    for (int a = 0; a < g.dim(); ++a) {
        if (a == axis)
            continue;
        sizes.push_back(g.size(a));
        kinds.push_back(g.kind(a));
    }
    Grid sub(sizes, kinds);
    if (w.degree() > sub.dim())
        throw DegreeError("restriction would exceed the slice dimension");
    FormField<T> out(sub, w.degree(), w.group());
    for (std::size_t c = 0; c < out.components(); ++c) {
        MultiIndex I;
        for (int i : out.index(c))
            I.push_back(i >= axis ? i + 1 : i);
        int ci = w.component_of(I);
        for (std::size_t p = 0; p < sub.points(); ++p) {
            auto si = sub.unflatten(p);
            std::array<int, 4> full{0, 0, 0, 0};
            for (int a = 0, b = 0; a < g.dim(); ++a)
                full[a] = (a == axis) ? index : si[b++];
            out.at(c, p) = w.at(ci, g.flatten(full));
        }
    }
    return out;
}

template FormField<double> restrict_to_slice(const FormField<double>&, int, int);
template FormField<Mat2> restrict_to_slice(const FormField<Mat2>&, int, int);

RealForm real_form(const Grid& g, int degree,
                   std::function<double(const MultiIndex&, const GridPoint&)> value,
                   std::function<double(const MultiIndex&, int, const GridPoint&)> partial)
{
    FormGenerator<double> gen{std::move(value), std::move(partial), {}};
    return RealForm::from_generator(g, degree, std::nullopt, std::move(gen));
}

}
