#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "surflink/errors.hpp"
#include "surflink/halfspace.hpp"

using namespace surflink;

namespace {

constexpr cplx J{0.0, 1.0};

// Textbook spherical components of an infinitesimal dipole in vacuum, projected onto z.
cplx spherical_dipole_ez(double freq, double moment, double rho, double dz)
{
    const double k = two_pi * freq / PhysicalConstants::c;
    const double eta = std::sqrt(PhysicalConstants::mu0 / PhysicalConstants::eps0);
    const double r = std::hypot(rho, dz);
    const double ct = dz / r;
    const double st = rho / r;
    const cplx phase = std::exp(-J * k * r);
    const cplx e_r = eta * moment * ct / (2.0 * pi * r * r) * (1.0 + 1.0 / (J * k * r)) * phase;
    const cplx e_t = J * eta * k * moment * st / (4.0 * pi * r) * (1.0 + 1.0 / (J * k * r) - 1.0 / (k * r * k * r)) * phase;
    return e_r * ct - e_t * st;
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

HalfSpaceProblem vacuum_problem(double src_z)
{
    HalfSpaceProblem p;
    p.upper = Medium::vacuum();
    p.lower = Medium::vacuum();
    p.source.depth = src_z;
    return p;
}

} // namespace

TEST(ReflectionTM, VanishesWithoutInterface)
{
    const auto p = vacuum_problem(0.5);
    for (double k = 0.0; k < 10.0; k += 0.37)
        EXPECT_EQ(reflection_coefficient_tm(k, p), cplx(0.0, 0.0));
}

TEST(ReflectionTM, PerfectConductorLimit)
{
    HalfSpaceProblem p;
    p.lower = Medium::pec();
    p.source.depth = 1.0;
    const double k0 = p.ctx.k0();
    for (double k = 0.0; k < 0.99 * k0; k += 0.05 * k0)
        EXPECT_LT(std::abs(reflection_coefficient_tm(k, p) - 1.0), 1e-4) << k;
}

TEST(ReflectionTM, SeawaterNormalIncidence)
{
    // eps2 = 81 - j 1258.3 at 50 MHz; mpmath value of (eps2 u1 - u2)/(eps2 u1 + u2) at k_rho = 0.
    HalfSpaceProblem p;
    const RfContext ctx(50e6);
    p.lower = {81.0, 1258.3 * ctx.omega() * PhysicalConstants::eps0, "sea"};
    p.source.depth = 1.0;
    const cplx r = reflection_coefficient_tm(0.0, p);
    EXPECT_NEAR(r.real(), 0.9590430957354646, 1e-12);
    EXPECT_NEAR(r.imag(), -0.03697761868663071, 1e-12);
}

TEST(ReflectionTM, BoundedForPropagatingWaves)
{
    HalfSpaceProblem p;
    p.source.depth = 0.3;
    const double k0 = p.ctx.k0();
    for (double k = 0.0; k < k0; k += 0.01 * k0)
        EXPECT_LE(std::abs(reflection_coefficient_tm(k, p)), 1.0 + 1e-12) << k;
}

TEST(ReflectionTM, GrazingIsPerturbedAndFlagged)
{
    HalfSpaceProblem p;
    p.source.depth = 0.3;
    int grazing = 0;
    const cplx r = reflection_coefficient_tm(p.ctx.k0(), p, grazing);
    EXPECT_GT(grazing, 0);
    EXPECT_TRUE(std::isfinite(r.real()) && std::isfinite(r.imag()));
    EXPECT_THROW(reflection_coefficient_tm(-1.0, p), DomainError);
}

TEST(FreeSpaceDipole, ClosedFormMatchesSphericalComponents)
{
    const RfContext ctx(50e6);
    for (double R : {1.0, 3.0, 10.0})
        for (double angle : {0.0, 0.4, 1.2, pi / 2})
            EXPECT_LT(rel(free_space_dipole_ez({1.0, 0.0}, ctx, 1.0, R * std::sin(angle), R * std::cos(angle)),
                          spherical_dipole_ez(50e6, 1.0, R * std::sin(angle), R * std::cos(angle))),
                      1e-12);
}

TEST(FieldAt, HomogeneousVacuumMatchesClosedForm)
{
    const auto p = vacuum_problem(0.2);
    for (double R : {1.0, 3.0, 10.0}) {
        const auto s = field_at(p, R * 0.6, 0.2 + R * 0.8);
        EXPECT_LT(rel(s.Ez, spherical_dipole_ez(50e6, 1.0, R * 0.6, R * 0.8)), 1e-6);
    }
}

TEST(FieldAt, SommerfeldIdentityOnGrid)
{
    const auto p = vacuum_problem(0.0);
    QuadratureConfig cfg;
    cfg.spectral_direct = true;
    for (double rho : {0.0, 0.5, 1.0, 3.0, 10.0})
        for (double z : {-3.0, -1.0, -0.2, 0.3, 2.0}) {
            const auto s = field_at(p, rho, z, cfg);
            EXPECT_LT(rel(s.Ez, spherical_dipole_ez(50e6, 1.0, rho, z)), 1e-6) << rho << " " << z;
        }
}

TEST(FieldAt, PerfectConductorMatchesImageTheory)
{
    HalfSpaceProblem p;
    p.lower = Medium::pec();
    p.source.depth = 1.0;
    for (double rho : {0.5, 1.0, 2.0})
        for (double z : {0.5, 1.5, 2.0}) {
            const cplx image = spherical_dipole_ez(50e6, 1.0, rho, z - 1.0) + spherical_dipole_ez(50e6, 1.0, rho, z + 1.0);
            EXPECT_LT(rel(field_at(p, rho, z).Ez, image), 1e-4) << rho << " " << z;
        }
}

TEST(FieldAt, Reciprocity)
{
    struct Pair {
        double za, zb, rho;
    };
    for (const Pair& c : {Pair{-0.3, 0.4, 2.0}, Pair{-0.3, -0.6, 2.0}, Pair{0.5, 1.5, 1.0}, Pair{-0.1, -0.05, 4.0}}) {
        HalfSpaceProblem a;
        a.source.depth = c.za;
        HalfSpaceProblem b;
        b.source.depth = c.zb;
        EXPECT_LT(rel(field_at(a, c.rho, c.zb).Ez, field_at(b, c.rho, c.za).Ez), 1e-6);
    }
}

TEST(FieldAt, SurfaceWaveDominatesBulk)
{
    HalfSpaceProblem with_interface;
    with_interface.source.depth = -0.2;
    HalfSpaceProblem bulk = with_interface;
    bulk.upper = Medium::seawater();
    const double contrast = field_at(with_interface, 3.0, -0.2).magnitude_db - field_at(bulk, 3.0, -0.2).magnitude_db;
    EXPECT_GE(contrast, 20.0);
}

TEST(FieldAt, MonotoneInObserverDepth)
{
    HalfSpaceProblem p;
    p.source.depth = -0.2;
    double prev = field_at(p, 3.0, -0.1).magnitude_db;
    for (double d = 0.15; d <= 2.0 + 1e-9; d += 0.05) {
        const double cur = field_at(p, 3.0, -d).magnitude_db;
        EXPECT_LE(cur, prev) << d;
        prev = cur;
    }
}

TEST(FieldAt, BitwiseDeterministic)
{
    HalfSpaceProblem p;
    p.source.depth = -0.4;
    const auto a = field_at(p, 2.5, -0.3);
    const auto b = field_at(p, 2.5, -0.3);
    EXPECT_EQ(a.Ez, b.Ez);
}

TEST(FieldAt, AcrossInterfaceIsFinite)
{
    HalfSpaceProblem p;
    p.source.depth = -0.3;
    const auto s = field_at(p, 2.0, 0.5);
    EXPECT_TRUE(std::isfinite(s.magnitude_db));
}

TEST(FieldAt, InputErrors)
{
    HalfSpaceProblem p;
    p.source.depth = -0.5;
    EXPECT_THROW(field_at(p, 0.0, -0.5), DomainError);
    EXPECT_THROW(field_at(p, -1.0, -0.5), DomainError);

    HalfSpaceProblem lossless = p;
    lossless.lower = {81.0, 0.0, "pure"};
    EXPECT_THROW(field_at(lossless, 1.0, -0.5), DomainError);

    HalfSpaceProblem no_moment = p;
    no_moment.source.moment = 0.0;
    EXPECT_THROW(field_at(no_moment, 1.0, -0.2), DomainError);

    QuadratureConfig cfg;
    cfg.rel_tol = 0.1;
    EXPECT_THROW(field_at(p, 1.0, -0.2, cfg), DomainError);
    cfg = {};
    cfg.max_tail_intervals = 4;
    EXPECT_THROW(field_at(p, 1.0, -0.2, cfg), DomainError);
}

TEST(FieldMap, SingleCellIsZeroDb)
{
    HalfSpaceProblem p;
    const std::vector<double> r{2.0}, z{-0.2};
    const auto m = field_map(p, r, z);
    ASSERT_EQ(m.db.size(), 1u);
    EXPECT_EQ(m.db[0], 0.0);
}

TEST(FieldMap, ShallowBeatsDeep)
{
    HalfSpaceProblem p;
    p.source.depth = -0.5;
    const std::vector<double> ranges{0.5, 1.0, 2.0, 4.0, 6.0};
    const std::vector<double> depths{-2.0, -1.0, -0.5, -0.1, -0.05};
    const auto m = field_map(p, ranges, depths);
    EXPECT_EQ(m.failures, 0u);
    double peak = -1e300;
    for (double v : m.db)
        peak = std::max(peak, v);
    EXPECT_EQ(peak, 0.0);
    for (std::size_t ir = 1; ir < ranges.size(); ++ir)
        EXPECT_GT(m.at(ir, 3), m.at(ir, 1)) << ranges[ir];
}

TEST(FieldMap, VacuumFollowsInverseDistance)
{
    const auto p = vacuum_problem(0.0);
    const std::vector<double> ranges{20.0, 40.0, 80.0, 160.0};
    const std::vector<double> depths{0.0};
    const auto m = field_map(p, ranges, depths);
    for (std::size_t i = 0; i < ranges.size(); ++i)
        EXPECT_NEAR(m.at(i, 0), -20.0 * std::log10(ranges[i] / ranges[0]), 0.1);
}

TEST(FieldMap, FailedPointsAreSentinels)
{
    HalfSpaceProblem p;
    p.source.depth = -0.5;
    const std::vector<double> ranges{0.0, 1.0};
    const std::vector<double> depths{-0.5, -0.2};
    const auto m = field_map(p, ranges, depths);
    EXPECT_EQ(m.failures, 1u);
    EXPECT_TRUE(FieldMap::missing(m.at(0, 0)));
    EXPECT_FALSE(FieldMap::missing(m.at(1, 1)));

    const std::vector<double> only_source_r{0.0}, only_source_z{-0.5};
    EXPECT_THROW(field_map(p, only_source_r, only_source_z), MapError);
}

TEST(FieldMap, IndependentOfThreadCount)
{
    HalfSpaceProblem p;
    const std::vector<double> ranges{0.5, 1.5, 3.0};
    const std::vector<double> depths{-1.0, -0.3, -0.1};
    const auto a = field_map(p, ranges, depths, {}, 1);
    const auto b = field_map(p, ranges, depths, {}, 3);
    EXPECT_EQ(a.db, b.db);
}

TEST(FieldMap, GridValidation)
{
    HalfSpaceProblem p;
    const std::vector<double> empty, bad{1.0, 1.0}, good{-0.2};
    EXPECT_THROW(field_map(p, empty, good), DomainError);
    EXPECT_THROW(field_map(p, bad, good), DomainError);
}
