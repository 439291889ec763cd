#include "eqcs/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace eqcs {

namespace {

QuadratureRule make_gl(int n)
{
    QuadratureRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        r.nodes[n - 1 - i] = 0.5 * (x + 1.0);
        r.weights[n - 1 - i] = 1.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
}

}

const QuadratureRule& gauss_legendre(int n)
{
    static std::mutex mu;
    static std::map<int, QuadratureRule> cache;
    if (n < 1)
        throw std::invalid_argument("Gauss-Legendre rule needs at least one node");
    std::lock_guard lock(mu);
    auto it = cache.find(n);
    if (it == cache.end())
        it = cache.emplace(n, make_gl(n)).first;
    return it->second;
}

std::vector<double> simpson_weights(int n)
{
    if (n < 4)
        throw std::invalid_argument("Simpson rule needs at least four points");
    std::vector<double> w(n, 0.0);
    const double h = 1.0 / (n - 1);
    int m = (n % 2 == 1) ? n : n - 3;
    for (int i = 0; i + 2 < m; i += 2) {
        w[i] += h / 3.0;
        w[i + 1] += 4.0 * h / 3.0;
        w[i + 2] += h / 3.0;
    }
    if (m != n) {
        int s = n - 4;
        w[s] += 3.0 * h / 8.0;
        w[s + 1] += 9.0 * h / 8.0;
        w[s + 2] += 9.0 * h / 8.0;
        w[s + 3] += 3.0 * h / 8.0;
    }
    return w;
}

std::vector<double> trapezoid_weights(int n)
{
    return std::vector<double>(n, 1.0 / n);
}

double pairwise_sum(std::span<const double> xs)
{
    if (xs.size() <= 8) {
        double s = 0.0;
        for (double x : xs)
            s += x;
        return s;
    }
    std::size_t h = xs.size() / 2;
    return pairwise_sum(xs.subspan(0, h)) + pairwise_sum(xs.subspan(h));
}

}
