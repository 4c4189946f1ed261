#include <gtest/gtest.h>

#include <sstream>

#include "surflink/media.hpp"
#include "surflink/scenario.hpp"

using namespace surflink;

namespace {

Scenario parse(const std::string& text)
{
    std::istringstream in(text);
    return parse_scenario(in);
}

std::size_t scenario_error_line(const std::string& text)
{
    try {
        parse(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return 0;
}

std::size_t csv_error_row(const std::string& text)
{
    std::istringstream in(text);
    try {
        parse_trial_csv(in);
    } catch (const ParseError& e) {
        return e.line();
    }
    return 0;
}

} // namespace

TEST(ScenarioFile, ParsesKeysCommentsAndWhitespace)
{
    const auto s = parse("# header\n\n  freq_hz = 5e7   # trailing\nsigma_s_per_m=3.475\nrange_steps = 4\nseed = 7\n"
                         "range_min_m = 1\nrange_max_m = 4\nsource_depth_m = -0.25\n");
    EXPECT_EQ(s.frequency(), 50e6);
    EXPECT_EQ(s.conductivity(), 3.475);
    EXPECT_EQ(*s.seed, 7u);
    EXPECT_EQ(*s.source_depth_m, -0.25);
    const std::vector<double> expect{1.0, 2.0, 3.0, 4.0};
    EXPECT_EQ(s.ranges(), expect);
    EXPECT_THROW(s.depths(), DomainError);
}

TEST(ScenarioFile, Defaults)
{
    const auto s = parse("");
    EXPECT_EQ(s.frequency(), 50e6);
    EXPECT_EQ(s.conductivity(), Medium::seawater().sigma);
    EXPECT_EQ(s.water().eps_r, 81.0);
    const auto p = s.link_params();
    EXPECT_NEAR(p.delta, 0.03818191661834285, 1e-12);
    EXPECT_EQ(p.L_r, 9.0);
    EXPECT_EQ(s.halfspace().source.depth, -0.5);
}

TEST(ScenarioFile, SalinityMapsToConductivity)
{
    const auto s = parse("salinity_percent = 3.5\n");
    EXPECT_DOUBLE_EQ(s.conductivity(), 3.475);
}

TEST(ScenarioFile, LosslessUnitWaterIsHomogeneous)
{
    const auto s = parse("eps_real = 1\nsigma_s_per_m = 0\n");
    EXPECT_TRUE(s.halfspace().homogeneous());
}

TEST(ScenarioFile, ErrorsCarryLineNumbers)
{
    EXPECT_EQ(scenario_error_line("freq_hz = 1e6\n# ok\nbogus_key = 3\n"), 3u);
    EXPECT_EQ(scenario_error_line("freq_hz = 1e6\nfreq_hz = 2e6\n"), 2u);
    EXPECT_EQ(scenario_error_line("freq_hz = fast\n"), 1u);
    EXPECT_EQ(scenario_error_line("freq_hz 1e6\n"), 1u);
    EXPECT_EQ(scenario_error_line("range_steps = 2.5\n"), 1u);
    EXPECT_EQ(scenario_error_line("sigma_s_per_m = 3\nfreq_hz = 1e6\nsalinity_percent = 3\n"), 3u);
}

TEST(ScenarioFile, BundledScenariosLoad)
{
    const std::string dir = std::string(SURFLINK_SOURCE_DIR) + "/scenarios/";
    for (const char* name : {"seawater_field.scn", "vacuum.scn", "single_cell.scn", "link_map.scn",
                             "infinite_margin.scn", "zero_margin.scn"}) {
        SCOPED_TRACE(name);
        const auto s = load_scenario(dir + name);
        EXPECT_FALSE(s.ranges().empty());
        EXPECT_FALSE(s.depths().empty());
    }
    EXPECT_THROW(load_scenario(dir + "missing.scn"), DomainError);
}

TEST(LinearGrid, Endpoints)
{
    const auto g = linear_grid(0.5, 12.0, 24);
    ASSERT_EQ(g.size(), 24u);
    EXPECT_EQ(g.front(), 0.5);
    EXPECT_EQ(g.back(), 12.0);
    EXPECT_NEAR(g[1], 1.0, 1e-15);
    EXPECT_EQ(linear_grid(2.0, 2.0, 1), std::vector<double>{2.0});
    EXPECT_THROW(linear_grid(1.0, 2.0, 0), DomainError);
    EXPECT_THROW(linear_grid(2.0, 1.0, 3), DomainError);
}

TEST(TrialCsv, RoundTrip)
{
    const std::vector<TrialRecord> recs{{0.5, 1.0, 10, 7}, {1.25, 3.5, 20, 0}};
    std::ostringstream out;
    write_trial_csv(out, recs);
    EXPECT_EQ(out.str(), "depth_m,range_m,attempts,successes\n0.5,1,10,7\n1.25,3.5,20,0\n");
    std::istringstream in(out.str());
    const auto back = parse_trial_csv(in);
    ASSERT_EQ(back.size(), 2u);
    EXPECT_EQ(back[1].depth, 1.25);
    EXPECT_EQ(back[1].range, 3.5);
    EXPECT_EQ(back[0].successes, 7);
}

TEST(TrialCsv, EmptyInputHasNoRecords)
{
    std::istringstream in("");
    EXPECT_TRUE(parse_trial_csv(in).empty());
    std::istringstream header_only("depth_m,range_m,attempts,successes\n");
    EXPECT_TRUE(parse_trial_csv(header_only).empty());
}

TEST(TrialCsv, ErrorsCarryRowNumbers)
{
    EXPECT_EQ(csv_error_row("depth,range,attempts,successes\n"), 1u);
    EXPECT_EQ(csv_error_row("depth_m,range_m,attempts,successes\n0.5,1,10,3\n0.5,2,10\n"), 3u);
    EXPECT_EQ(csv_error_row("depth_m,range_m,attempts,successes\n0.5,1,ten,3\n"), 2u);
    EXPECT_EQ(csv_error_row("depth_m,range_m,attempts,successes\n0.5,1,10,11\n"), 2u);
    EXPECT_EQ(csv_error_row("depth_m,range_m,attempts,successes\n0.5,1,0,0\n"), 2u);
    EXPECT_EQ(csv_error_row("depth_m,range_m,attempts,successes\n-0.5,1,10,1\n"), 2u);
}
