#pragma once

#include "eqcs/circle.hpp"
#include "eqcs/curve.hpp"

#include <gmpxx.h>
#include <vector>

namespace eqcs {

/// Spatial link field on the periodic N x N lattice, in units where A = 2 pi i a.
/// bx[i + N j] sits on the link (i,j) -> (i+1,j), by on (i,j) -> (i,j+1).
struct LatticeConfig {
    int n = 0;
    std::vector<mpq_class> bx, by;

    static LatticeConfig zero(int n);
    bool operator==(const LatticeConfig& o) const { return n == o.n && bx == o.bx && by == o.by; }
};

/// Gauge map exp(2 pi i chi) with chi(i,j) = m i/N + n j/N + chi0(i,j).
struct LatticeTwist {
    int n = 0;
    int wx = 0, wy = 0;
    std::vector<mpq_class> chi0;

    static LatticeTwist identity(int n);
    /// chi including the winding ramp, evaluated at vertex (i, j) with 0 <= i, j < N.
    mpq_class chi(int i, int j) const;
    LatticeTwist operator*(const LatticeTwist& o) const;
    LatticeTwist inverse() const;
    /// b - d chi, with the ramp contributing m/N and n/N on every x and y link.
    LatticeConfig act(const LatticeConfig& b) const;
};

/// Sampled path b^0, ..., b^T with b^T = twist . b^0 exactly.
struct LatticePath {
    std::vector<LatticeConfig> samples;
    LatticeTwist twist;

    void validate() const;
};

LatticePath concat(const LatticePath& a, const LatticePath& b);
LatticePath reverse(const LatticePath& a);

class InconsistentLattice : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Villain pair on the periodic N_x x N_y x N_t cubical complex.
/// Links a[mu](v) are rational; plaquette integers n[p](v) with p = 01, 02, 12.
class LatticeU1Field {
public:
    LatticeU1Field(int nx, int ny, int nt);

    int size(int axis) const { return dims_[axis]; }
    std::size_t vertices() const { return static_cast<std::size_t>(dims_[0]) * dims_[1] * dims_[2]; }
    std::size_t index(int i, int j, int t) const;
    std::size_t shift(std::size_t v, int axis) const;

    mpq_class& link(int mu, std::size_t v) { return links_[mu][v]; }
    const mpq_class& link(int mu, std::size_t v) const { return links_[mu][v]; }
    long& plaquette(int p, std::size_t v) { return plaq_[p][v]; }
    long plaquette(int p, std::size_t v) const { return plaq_[p][v]; }

    /// (da)_{mu nu}(v) for plaquette index p.
    mpq_class curl(int p, std::size_t v) const;
    /// Sets n = -round(da) on every plaquette.
    void fix_plaquettes();
    /// Largest |dn| over cubes; zero for consistent data.
    long cube_defect() const;
    /// Flux of da + n through the (mu, nu) coordinate torus at the origin.
    mpq_class flux(int p) const;

    /// a -> a + d chi for a vertex function chi.
    void gauge(const std::vector<mpq_class>& chi);
    /// a -> a + k, n -> n - dk for an integer link cochain k.
    void integer_shift(const std::vector<long>& k, int mu);

private:
    std::array<int, 3> dims_;
    std::array<std::vector<mpq_class>, 3> links_;
    std::array<std::vector<long>, 3> plaq_;
};

/// sum over cubes of a u da + a u n + n u a, exact.
mpq_class lattice_action(const LatticeU1Field& f);
/// -k times the lattice action, reduced to [0,1).
CircleValue exact_cs_u1(const LatticeU1Field& f, int k);

/// Lattice mapping torus of a path: slices b^0..b^{T-1}, each step split x/2, y, x/2,
/// temporal links zero except the wrap, which carries chi.
LatticeU1Field assemble_lattice_torus(const LatticePath& path);
CircleValue exact_xi_u1(const LatticePath& path, int k);

/// Rational link integrals of a U(1) curve at steps_per_piece + 1 parameters per piece.
LatticePath sample_u1_curve(const FamilyCurve& gamma, int n, int steps_per_piece);

/// Nearest rational with denominator 2^40.
mpq_class dyadic(double x);

}
