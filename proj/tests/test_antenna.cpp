#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <random>

#include "json.hpp"

#include "surflink/antenna.hpp"
#include "surflink/errors.hpp"

using namespace surflink;

TEST(Antenna, HelixTrimmedIntoWater)
{
    EXPECT_EQ(resonance_in_medium(450e6, 81.0), 50e6);
    EXPECT_EQ(size_reduction_factor(81.0), 9.0);
}

TEST(Antenna, TrivialCases)
{
    EXPECT_EQ(resonance_in_medium(123e6, 1.0), 123e6);
    EXPECT_EQ(size_reduction_factor(1.0), 1.0);
    EXPECT_DOUBLE_EQ(resonance_in_medium(90e6, 9.0), 30e6);
    EXPECT_NEAR(size_reduction_factor(80.0), 8.94427190999916, 1e-13);
}

TEST(Antenna, ScalingIdentityAndMonotonicity)
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> eps(1.0, 100.0), f(1e6, 1e10);
    for (int i = 0; i < 500; ++i) {
        const double e = eps(rng), fa = f(rng);
        EXPECT_NEAR(resonance_in_medium(fa, e) * size_reduction_factor(e) / fa, 1.0, 1e-12);
        EXPECT_LT(resonance_in_medium(fa, e + 0.5), resonance_in_medium(fa, e));
        EXPECT_GT(size_reduction_factor(e + 0.5), size_reduction_factor(e));
    }
}

TEST(Antenna, Errors)
{
    EXPECT_THROW(resonance_in_medium(450e6, 0.5), DomainError);
    EXPECT_THROW(size_reduction_factor(0.0), DomainError);
    EXPECT_THROW(resonance_in_medium(0.0, 81.0), DomainError);
}

TEST(Antenna, ReferenceRecordMatchesDataFile)
{
    std::ifstream in(std::string(SURFLINK_SOURCE_DIR) + "/data/antenna_reference.json");
    ASSERT_TRUE(in.good());
    const auto j = nlohmann::json::parse(in);
    const AntennaRecord ref = reference_helix();
    EXPECT_EQ(j["reference_helix"]["f_air_hz"].get<double>(), ref.f_air);
    EXPECT_EQ(j["reference_helix"]["eps_r"].get<double>(), ref.eps_r);
    EXPECT_EQ(j["reference_helix"]["length_m"].get<double>(), ref.length);
    EXPECT_EQ(j["reference_helix"]["diameter_m"].get<double>(), ref.diameter);
    EXPECT_EQ(j["reference_helix"]["notes"].get<std::string>(), ref.notes);

    const EnclosureMeasurement m;
    EXPECT_EQ(j["enclosure_measurement"]["kind"], "measurement");
    EXPECT_EQ(j["enclosure_measurement"]["used_in_computation"], false);
    EXPECT_EQ(j["enclosure_measurement"]["advantage_db"].get<double>(), m.advantage_db);
    EXPECT_EQ(j["enclosure_measurement"]["freq_hz"].get<double>(), m.freq_hz);
    EXPECT_EQ(resonance_in_medium(ref.f_air, ref.eps_r), 50e6);
}
