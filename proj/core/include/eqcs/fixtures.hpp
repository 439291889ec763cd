#pragma once

#include "eqcs/abelian_oracle.hpp"
#include "eqcs/equivariant.hpp"

#include <cstdint>
#include <random>

namespace eqcs {

/// mt19937_64 with a fixed bits-to-double map, so streams agree across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : g_(seed) {}
    /// (x >> 11) * 2^-53, uniform in [0,1).
    double uniform() { return static_cast<double>(g_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Uniform integer in [lo, hi].
    int integer(int lo, int hi) { return lo + static_cast<int>(uniform() * (hi - lo + 1)); }

private:
    std::mt19937_64 g_;
};

inline constexpr std::uint64_t kDefaultSeed = 0x5eed2024;

/// Random trigonometric field with wave numbers in {-1,0,1} on T^2 and {0, 1/4, 1/2} along z on the slab.
AlgebraField random_field(Rng& rng, GroupId g, int dim, int modes, double amplitude);
Connection random_connection(Rng& rng, GroupId g, int dim, int modes, double amplitude);

/// F2: SU(2) trigonometric fixtures on T^2, mixing segments, orbits and broken lines.
std::vector<Fixture<GaugeSpace>> su2_battery(std::size_t count = 12, std::uint64_t seed = kDefaultSeed);
/// F1: U(1) trigonometric fixtures on T^2 with null-homotopic twists.
std::vector<Fixture<GaugeSpace>> u1_battery(std::size_t count = 6, std::uint64_t seed = kDefaultSeed);
/// SU(2) fixtures on T^2 x [0,1].
std::vector<Fixture<GaugeSpace>> slab_battery(std::size_t count = 3, std::uint64_t seed = kDefaultSeed);
/// Translations of flat U(1) holonomy coordinates.
std::vector<Fixture<TranslationSpace>> translation_battery(std::size_t count = 8,
                                                           std::uint64_t seed = kDefaultSeed);

/// A = 0, a = X dx, b = X dy with X = diag(i, -i) on T^2.
struct AtiyahBottFixture {
    Connection A, a, b;
};
AtiyahBottFixture atiyah_bott_fixture();

/// SU(2) connection on T^3 for the classical Chern-Simons comparison.
Connection su2_t3_fixture();

struct FlatFamily {
    std::vector<Connection> points;
    std::vector<AlgebraField> generators;
};
/// Constant U(1) connections with constant gauge directions.
FlatFamily flat_u1_family(std::size_t count = 6, std::uint64_t seed = kDefaultSeed);
/// U(1) connections with curvature, same generator convention.
FlatFamily curved_u1_family(std::size_t count = 4, std::uint64_t seed = kDefaultSeed);

/// Lattice path b^0 -> ... -> twist . b^0 with random rational links and gauge offsets in +-1/20 (denominator 2^10).
/// Plaquette curls then stay below 1/2 for N >= 8 and windings up to 2.
LatticePath random_lattice_path(Rng& rng, int n, int steps, std::array<int, 2> winding,
                                const LatticeConfig* start = nullptr);

/// Constant field with holonomy q around y, carried by the twist exp(2 pi i (m x + n y)).
LatticePath flat_twisted_path(int n, int steps, const mpq_class& q, std::array<int, 2> winding);

/// Smooth U(1) winding-0 curve for the lattice/quadrature comparison.
struct CrossFixture {
    GaugeMap phi;
    FamilyCurve gamma;
};
CrossFixture u1_cross_fixture();

}
