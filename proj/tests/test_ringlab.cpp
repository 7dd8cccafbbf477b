#include <filesystem>
#include <fstream>
#include <random>

#include <gtest/gtest.h>

#include "siegel/ringlab/suites.hpp"

using namespace siegel;
using ringlab::Registry;

namespace {

/// Number of (a, b, c, d) >= 0 with 4a + 6b + 10c + 12d = k, by enumeration.
long brute_count(int k) {
    long n = 0;
    for (int a = 0; 4 * a <= k; ++a)
        for (int b = 0; 4 * a + 6 * b <= k; ++b)
            for (int c = 0; 4 * a + 6 * b + 10 * c <= k; ++c)
                if ((k - 4 * a - 6 * b - 10 * c) % 12 == 0) ++n;
    return n;
}

class TempDir {
public:
    TempDir() {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() / ("siegel_test_" + std::to_string(rd()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() { std::filesystem::remove_all(path_); }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

} // namespace

TEST(Ring, EvenDimensionAgainstEnumeration) {
    for (int k = 0; k <= 80; k += 2) {
        EXPECT_EQ(ringlab::even_dimension(k), brute_count(k)) << k;
        EXPECT_EQ(static_cast<long>(ringlab::even_monomials(k).size()), brute_count(k)) << k;
    }
    EXPECT_EQ(ringlab::even_dimension(12), 3);
    EXPECT_THROW(ringlab::even_dimension(7), OddWeight);
    EXPECT_THROW(ringlab::even_dimension(-2), InvalidArgument);
}

TEST(Ring, MonomialNames) {
    EXPECT_EQ(ringlab::monomial_name({0, 0, 0, 0}), "1");
    EXPECT_EQ(ringlab::monomial_name({2, 0, 1, 0}), "psi4^2*chi10");
}

TEST(Registry, UnknownAndInvalid) {
    Registry reg;
    EXPECT_THROW(reg.named_form("nosuch", 2), UnknownName);
    EXPECT_THROW(reg.named_form("chi10", 0), InvalidArgument);
    EXPECT_THROW(ringlab::recipe_hash("nosuch", 2), UnknownName);
    EXPECT_THROW(reg.cache_path("chi10", 2), InvalidArgument);
    EXPECT_TRUE(ringlab::registry_contains("chi35"));
}

TEST(Registry, HashDependsOnTruncationAndName) {
    EXPECT_NE(ringlab::recipe_hash("chi10", 2), ringlab::recipe_hash("chi10", 3));
    EXPECT_NE(ringlab::recipe_hash("chi10", 2), ringlab::recipe_hash("chi12", 2));
    EXPECT_EQ(ringlab::recipe_hash("psi4", 2), ringlab::recipe_hash("psi4", 2));
}

TEST(Registry, CacheRoundTripAndRevalidation) {
    TempDir dir;
    const auto fresh = Registry::rebuild("chi12", 2);
    {
        Registry reg(dir.path());
        EXPECT_EQ(reg.named_form("chi12", 2).expansion, fresh.expansion);
    }
    const auto file = dir.path() / "chi12_N2.json";
    ASSERT_TRUE(std::filesystem::exists(file));
    {
        Registry reg(dir.path());
        auto loaded = reg.named_form("chi12", 2);
        EXPECT_EQ(loaded.expansion, fresh.expansion);
        EXPECT_EQ(loaded.recipe, fresh.recipe);
    }
    // A stored entry with a stale hash and tampered data is ignored.
    nlohmann::json j;
    {
        std::ifstream in(file);
        j = nlohmann::json::parse(in);
    }
    j["recipe_hash"] = 0;
    j["expansion"] = theta::chi10<arith::Integer>(2).to_json();
    {
        std::ofstream out(file);
        out << j.dump();
    }
    EXPECT_EQ(Registry(dir.path()).named_form("chi12", 2).expansion, fresh.expansion);
    // A damaged file is rebuilt and replaced.
    {
        std::ofstream out(file);
        out << "{ not json";
    }
    EXPECT_EQ(Registry(dir.path()).named_form("chi12", 2).expansion, fresh.expansion);
    std::ifstream in(file);
    EXPECT_FALSE(nlohmann::json::parse(in, nullptr, false).is_discarded());
}

TEST(Registry, ConcurrentBuildsKeepOrder) {
    Registry reg;
    auto forms = reg.named_forms({"chi12", "chi10", "psi4"}, 2);
    ASSERT_EQ(forms.size(), 3u);
    EXPECT_EQ(forms[0].name, "chi12");
    EXPECT_EQ(forms[1].expansion, theta::chi10<arith::Integer>(2));
    EXPECT_EQ(forms[2].expansion.weight(), (qexp::WeightLabel{0, 4}));
}

TEST(Ring, EvenGenerationUpToWeight30) {
    Registry reg;
    for (const auto& e : ringlab::verify_even_generation(30, 3, reg)) EXPECT_TRUE(e.pass) << "k = " << e.k << ", rank " << e.rank;
}

TEST(Suites, EverySuitePasses) {
    Registry reg;
    for (const auto& name : ringlab::suite_names()) {
        auto r = ringlab::run_suite(name, {}, reg);
        EXPECT_TRUE(r.pass()) << ringlab::render(r);
        EXPECT_FALSE(r.checks.empty()) << name;
    }
}

TEST(Suites, ReportsAndErrors) {
    Registry reg;
    EXPECT_THROW(ringlab::run_suite("nosuch", {}, reg), UnknownName);
    ringlab::SuiteReport empty{"x", 0, {}};
    EXPECT_FALSE(empty.pass());
    auto r = ringlab::run_suite("chi68-block", {}, reg);
    auto text = ringlab::render(r);
    EXPECT_NE(text.find("chi68-block: PASS"), std::string::npos);
    auto lines = ringlab::render_json_lines(r);
    std::istringstream in(lines);
    std::string line;
    std::size_t count = 0;
    while (std::getline(in, line)) {
        auto j = nlohmann::json::parse(line);
        EXPECT_EQ(j.at("suite"), "chi68-block");
        EXPECT_EQ(j.at("status"), "PASS");
        ++count;
    }
    EXPECT_EQ(count, r.checks.size() + 1);
}

TEST(Suites, OddWeightBelowFiveIsReportedVacuous) {
    Registry reg;
    auto o = ringlab::odd_weight_divisibility_check(3, reg);
    EXPECT_FALSE(o.square_nonzero_in_box);
    auto o5 = ringlab::odd_weight_divisibility_check(5, reg);
    EXPECT_TRUE(o5.square_nonzero_in_box);
    EXPECT_TRUE(o5.pass);
}
