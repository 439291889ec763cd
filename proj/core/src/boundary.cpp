#include "eqcs/boundary.hpp"
#include "eqcs/quadrature.hpp"

namespace eqcs {

namespace {

void require_slab(const FamilyCurve& gamma, const CharacteristicPair& p)
{
    if (gamma.dim() != 3)
        throw WrongDimension("boundary integrals need a family on T^2 x [0,1]");
    if (gamma.group() != p.group())
        throw GroupMismatch("curve and characteristic pair have different groups");
    if (p.degree() != 2)
        throw WrongDimension("boundary integrals are implemented for quadratic pairs");
}

}

double mapping_torus_chern_weil(const FamilyCurve& gamma, const CharacteristicPair& p, const BoundaryOptions& opt)
{
    require_slab(gamma, p);
    const int n = opt.n_space;
    Grid grid({n, n, opt.n_depth, opt.n_time},
              {AxisKind::Periodic, AxisKind::Periodic, AxisKind::Interval, AxisKind::Interval}, -1);
    std::vector<double> pieces;
    for (const auto& piece : gamma.pieces()) {
        FormGenerator<Mat2> gen;
        gen.value = [piece](const MultiIndex& I, const GridPoint& x) -> Mat2 {
            if (I[0] == 3)
                return Mat2::Zero();
            return piece->jet(x[3], {x[0], x[1], x[2]}).A.A[I[0]];
        };
        gen.exterior = [piece](const MultiIndex& J, const GridPoint& x) -> Mat2 {
            CurveJet c = piece->jet(x[3], {x[0], x[1], x[2]});
            if (J[1] == 3)
                return -c.V[J[0]];
            return c.A.dA[J[0]][J[1]];
        };
        AlgebraForm A = AlgebraForm::from_generator(grid, 1, gamma.group(), std::move(gen));
        AlgebraForm F = exterior_derivative(A) + wedge(A, A);
        pieces.push_back(integrate(p_wedge(p, F, F)));
    }
    return pairwise_sum(pieces);
}

double fiber_one_form(const Connection& A, const Connection& a, const CharacteristicPair& p,
                      const BoundaryOptions& opt)
{
    if (A.dim() != 3 || a.dim() != 3)
        throw WrongDimension("the fiber one-form lives on T^2 x [0,1]");
    Grid grid = Grid::slab(opt.n_space, opt.n_depth);
    AlgebraForm fa = a.sample(grid);
    AlgebraForm F = curvature(A, grid);
    std::vector<const AlgebraForm*> args{&fa};
    for (int j = 1; j < p.degree(); ++j)
        args.push_back(&F);
    return p.degree() * integrate(p_wedge(p, args));
}

double integrate_fiber_one_form(const FamilyCurve& gamma, const CharacteristicPair& p, const BoundaryOptions& opt)
{
    require_slab(gamma, p);
    const int n = opt.n_space;
    Grid grid = Grid::slab(n, opt.n_depth);
    const auto wz = grid.weights(2);
    const auto& gl = gauss_legendre(opt.n_time);
    std::vector<double> pieces;
    std::vector<double> slab(grid.points());
    for (const auto& piece : gamma.pieces()) {
        std::vector<double> nodes(gl.nodes.size());
        for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
            for (std::size_t pt = 0; pt < grid.points(); ++pt) {
                GridPoint g = grid.point(pt);
                CurveJet c = piece->jet(gl.nodes[q], {g[0], g[1], g[2]});
                Mat2 Fxy = c.A.curvature(0, 1), Fxz = c.A.curvature(0, 2), Fyz = c.A.curvature(1, 2);
                double v = p.bilinear(c.V[0], Fyz) - p.bilinear(c.V[1], Fxz) + p.bilinear(c.V[2], Fxy);
                slab[pt] = 2.0 * v * wz[grid.unflatten(pt)[2]] / (static_cast<double>(n) * n);
            }
            nodes[q] = gl.weights[q] * pairwise_sum(slab);
        }
        pieces.push_back(pairwise_sum(nodes));
    }
    return pairwise_sum(pieces);
}

CircleValue boundary_xi(const GaugeMap& phi, const FamilyCurve& gamma, const CharacteristicPair& p,
                        const XiOptions& opt)
{
    if (gamma.dim() != 3)
        throw WrongDimension("boundary Xi needs a family on T^2 x [0,1]");
    CircleValue top = xi(face_restriction(phi, 1.0), face_restriction(gamma, 1.0), p, opt).value;
    CircleValue bottom = xi(face_restriction(phi, 0.0), face_restriction(gamma, 0.0), p, opt).value;
    return top - bottom;
}

}
