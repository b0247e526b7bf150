#include <cmath>

#include "doctest.h"

#include "bbtv/error.hpp"
#include "bbtv/sis.hpp"
#include "support.hpp"

using namespace bbtv;
using testing::make_network;

namespace {

std::vector<std::uint8_t> mask(std::size_t n, std::initializer_list<int> on) {
    std::vector<std::uint8_t> m(n, 0);
    for (int i : on) m[i] = 1;
    return m;
}

std::size_t encode(const State& s) {
    std::size_t code = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s.infected[i]) code |= std::size_t{1} << i;
    return code;
}

struct KernelCase {
    const char* name;
    std::size_t n;
    std::vector<std::pair<int, int>> edges;
    std::vector<bool> planted;
    std::vector<int> infected;
    std::vector<NodeId> cleared;
    ParamSet params;
    Season season;
};

std::vector<KernelCase> small_cases() {
    return {
        {"path3 centre", 3, {{0, 1}, {1, 2}}, {}, {0, 1, 0}, {}, ParamSet::make(0.3, 0.6, 0.5, 0.2, 0.1, 0.05),
         Season::Summer},
        {"path3 end winter", 3, {{0, 1}, {1, 2}}, {}, {1, 0, 0}, {}, ParamSet::make(0.3, 0.6, 0.5, 0.2, 0.1, 0.05),
         Season::Winter},
        {"triangle", 3, {{0, 1}, {1, 2}, {0, 2}}, {}, {1, 1, 0}, {}, ParamSet::make(0.25, 0.3, 0.4, 0.3, 0.2, 0.1),
         Season::Summer},
        {"star with unplanted leaf", 4, {{0, 1}, {0, 2}, {0, 3}}, {true, true, false, true}, {1, 0, 0, 0}, {},
         ParamSet::make(0.2, 0.2, 0.6, 0.6, 0.3, 0.3), Season::Winter},
        {"cycle5 with cleared node", 5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}}, {}, {1, 0, 1, 0, 0}, {3},
         ParamSet::make(0.4, 0.1, 0.35, 0.5, 0.15, 0.25), Season::Summer},
        {"two components", 5, {{0, 1}, {2, 3}, {3, 4}}, {}, {1, 0, 0, 1, 0}, {},
         ParamSet::make(0.5, 0.5, 0.3, 0.3, 0.2, 0.2), Season::Winter},
        {"isolated pair", 2, {}, {}, {1, 0}, {}, ParamSet::make(0.1, 0.2, 0.9, 0.9, 0.45, 0.35), Season::Summer},
    };
}

}  // namespace

TEST_CASE("zero parameters leave the state unchanged") {
    const auto net = testing::fixture_network();
    RandomStream rng(1);
    std::vector<std::uint8_t> inf(60, 0);
    for (int i = 0; i < 60; i += 3)
        if (net.planted(i)) inf[i] = 1;
    const State s(net, inf);
    const ParamSet zero{};
    for (Season season : {Season::Summer, Season::Winter}) CHECK(step(s, net, zero, season, rng) == s);
}

TEST_CASE("certain recovery without infection empties the network") {
    const auto net = testing::fixture_network();
    RandomStream rng(2);
    std::vector<std::uint8_t> inf(60, 0);
    for (int i = 0; i < 60; i += 2)
        if (net.planted(i)) inf[i] = 1;
    const auto next = step(State(net, inf), net, ParamSet::make(1, 1, 0, 0, 0, 0), Season::Summer, rng);
    CHECK(next.infected_count() == 0);
}

TEST_CASE("path example: both ends infected with probability 0.25") {
    const auto net = testing::path_graph(3);
    const State s(net, mask(3, {1}));
    const auto p = ParamSet::make(0, 0, 0.5, 0.5, 0, 0);
    RandomStream rng(3);
    const int runs = 100000;
    int both = 0, left = 0, right = 0;
    for (int r = 0; r < runs; ++r) {
        const auto next = step(s, net, p, Season::Summer, rng);
        REQUIRE(next.infected[1] == 1);
        left += next.infected[0];
        right += next.infected[2];
        both += next.infected[0] && next.infected[2];
    }
    const double se25 = std::sqrt(0.25 * 0.75 / runs), se5 = std::sqrt(0.25 / runs);
    CHECK(std::abs(both / double(runs) - 0.25) < 3 * se25);
    CHECK(std::abs(left / double(runs) - 0.5) < 3 * se5);
    CHECK(std::abs(right / double(runs) - 0.5) < 3 * se5);
}

TEST_CASE("transition kernel matches exact enumeration (chi-square, alpha 0.01)") {
    for (const auto& c : small_cases()) {
        CAPTURE(c.name);
        const auto net = make_network(c.n, c.edges, c.planted);
        std::vector<std::uint8_t> inf(c.infected.begin(), c.infected.end());
        const State s(net, inf, c.cleared);
        std::vector<int> frozen(c.n, 0);
        for (std::size_t i = 0; i < c.n; ++i) frozen[i] = s.cleared[i];
        const auto exact = testing::enumerate_step(c.n, c.edges, c.infected, frozen, c.params.recovery(c.season),
                                                   c.params.near(c.season), c.params.far(c.season));
        std::vector<std::size_t> hist(exact.size(), 0);
        RandomStream rng(RandomStream::derive(99, c.n * 7 + c.edges.size()));
        for (int r = 0; r < 100000; ++r) ++hist[encode(step(s, net, c.params, c.season, rng))];
        CHECK(testing::chi_square_pvalue(hist, exact) > 0.01);
    }
}

TEST_CASE("simulate: calendar of a 37-month run from December") {
    const auto net = testing::path_graph(3);
    RandomStream rng(4);
    const auto tr = simulate(net, ParamSet::make(0.2, 0.2, 0.3, 0.3, 0.1, 0.1), State(net, mask(3, {0})),
                             {2014, 12}, 37, rng);
    CHECK(tr.snapshot_count() == 38);
    CHECK(tr.month(37) == YearMonth{2018, 1});
    int summer_months = 0, summer_steps = 0;
    for (std::size_t t = 0; t < 38; ++t) summer_months += tr.month(t).season() == Season::Summer;
    for (std::size_t t = 0; t < 37; ++t) summer_steps += tr.month(t).season() == Season::Summer;
    CHECK(summer_months == 20);
    CHECK(summer_steps == 19);
    CHECK(tr.infected(0, 0));
    CHECK_FALSE(tr.infected(1, 0));
    CHECK_THROWS_AS(simulate(net, ParamSet{}, State(net, mask(3, {})), {2014, 12}, 0, rng), ConfigError);
}

TEST_CASE("season of a step is the season of the source month") {
    // one infected node, recovery certain in winter only
    const auto net = testing::path_graph(2);
    const auto p = ParamSet::make(0.0, 1.0, 0.0, 0.0, 0.0, 0.0);
    RandomStream rng(5);
    // Feb (summer) -> Mar: no recovery; Mar (winter) -> Apr: recovery
    const auto tr = simulate(net, p, State(net, mask(2, {0})), {2015, 2}, 2, rng);
    CHECK(tr.infected(0, 1));
    CHECK_FALSE(tr.infected(0, 2));
    CHECK(season_for(SeasonMode::AllSummer, {2015, 5}) == Season::Summer);
    CHECK(season_for(SeasonMode::AllWinter, {2015, 12}) == Season::Winter);
    CHECK(season_for(SeasonMode::Calendar, {2015, 8}) == Season::Winter);
    const auto forced = simulate(net, p, State(net, mask(2, {0})), {2015, 2}, 2, rng, SeasonMode::AllSummer);
    CHECK(forced.infected(0, 2));
}

TEST_CASE("all-susceptible start stays all-susceptible") {
    const auto net = testing::fixture_network();
    RandomStream rng(6);
    const auto tr = simulate(net, ParamSet::make(0.5, 0.5, 1, 1, 1, 1), State(net, std::vector<std::uint8_t>(60, 0)),
                             {2014, 12}, 37, rng);
    for (std::size_t t = 0; t < tr.snapshot_count(); ++t)
        for (auto v : tr.snapshot(t)) CHECK(v == 0);
}

TEST_CASE("cleared and unplanted nodes stay susceptible") {
    const auto net = testing::fixture_network();
    std::vector<std::uint8_t> inf(60, 0);
    for (int i : {12, 27, 33, 44, 46, 58}) inf[i] = 1;
    const std::vector<NodeId> cleared{24, 25, 26, 43};
    const State s(net, inf, cleared);
    RandomStream rng(7);
    for (int rep = 0; rep < 50; ++rep) {
        const auto tr = simulate(net, ParamSet::make(0.1, 0.1, 0.9, 0.9, 0.5, 0.5), s, {2014, 12}, 12, rng);
        for (std::size_t t = 0; t < tr.snapshot_count(); ++t) {
            for (NodeId n : cleared) CHECK_FALSE(tr.infected(n, t));
            CHECK_FALSE(tr.infected(9, t));
            CHECK_FALSE(tr.infected(50, t));
        }
    }
    CHECK_THROWS_AS(State(net, inf, std::vector<NodeId>{12}), DataError);
    std::vector<std::uint8_t> bad(60, 0);
    bad[9] = 1;
    CHECK_THROWS_AS(State(net, bad), DataError);
}

TEST_CASE("raising a parameter never removes an event under a shared stream") {
    const auto net = testing::fixture_network();
    RandomStream pick(8);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::uint8_t> inf(60, 0);
        for (NodeId n = 0; n < 60; ++n) inf[n] = net.planted(n) && pick.uniform() < 0.4;
        const State s(net, inf);
        ParamSet lo;
        for (auto& v : lo.values) v = pick.uniform() * 0.5;
        const Season season = trial % 2 ? Season::Summer : Season::Winter;
        for (std::size_t k = 0; k < ParamSet::size; ++k) {
            ParamSet hi = lo;
            hi[k] = lo[k] + pick.uniform() * (1.0 - lo[k]);
            const std::uint64_t seed = pick();
            RandomStream r1(seed), r2(seed);
            const auto a = step(s, net, lo, season, r1);
            const auto b = step(s, net, hi, season, r2);
            for (NodeId n = 0; n < 60; ++n) {
                if (s.infected[n]) {
                    // a recovery under lo is still a recovery under hi
                    if (k < 2 && !a.infected[n]) CHECK_FALSE(b.infected[n]);
                    if (k >= 2) CHECK(a.infected[n] == b.infected[n]);
                } else {
                    if (k >= 2 && a.infected[n]) CHECK(b.infected[n]);
                    if (k < 2) CHECK(a.infected[n] == b.infected[n]);
                }
            }
        }
    }
}

TEST_CASE("without far transmission infection stays in its component") {
    const auto net = make_network(8, {{0, 1}, {1, 2}, {2, 3}, {4, 5}, {5, 6}, {6, 7}});
    RandomStream rng(9);
    for (int rep = 0; rep < 200; ++rep) {
        const auto tr =
            simulate(net, ParamSet::make(0.1, 0.1, 0.9, 0.9, 0.0, 0.0), State(net, mask(8, {1})), {2014, 12}, 24, rng);
        for (std::size_t t = 0; t < tr.snapshot_count(); ++t)
            for (NodeId n = 4; n < 8; ++n) CHECK_FALSE(tr.infected(n, t));
    }
}

TEST_CASE("ensemble basics") {
    const auto net = testing::path_graph(3);
    const State s(net, mask(3, {1}));
    const std::vector<ParamSet> draws{ParamSet::make(0.3, 0.3, 0.5, 0.5, 0.1, 0.1)};

    SUBCASE("one run reproduces its trajectory") {
        EnsembleOptions o;
        o.runs = 1;
        o.master_seed = 5;
        const auto e = simulate_ensemble(net, draws, s, {2014, 12}, 6, o);
        RandomStream r = RandomStream::derive(5, 0);
        const auto tr = simulate(net, draws[0], s, {2014, 12}, 6, r);
        for (std::size_t t = 0; t <= 6; ++t)
            for (NodeId n = 0; n < 3; ++n) CHECK(e.frequency(n, t) == (tr.infected(n, t) ? 1.0 : 0.0));
    }
    SUBCASE("one-step frequencies against enumeration at 1e5 runs") {
        EnsembleOptions o;
        o.runs = 100000;
        o.master_seed = 6;
        const auto e = simulate_ensemble(net, draws, s, {2015, 5}, 1, o);
        const auto exact =
            testing::enumerate_step(3, {{0, 1}, {1, 2}}, {0, 1, 0}, {0, 0, 0}, 0.3, 0.5, 0.1);
        for (NodeId n = 0; n < 3; ++n) {
            double p = 0.0;
            for (std::size_t code = 0; code < exact.size(); ++code)
                if ((code >> n) & 1U) p += exact[code];
            const double se = std::sqrt(p * (1 - p) / o.runs);
            CHECK(std::abs(e.frequency(n, 1) - p) < 3 * se);
        }
        CHECK(std::abs(e.frequency(1, 1) - 0.7) < 3 * std::sqrt(0.21 / o.runs));
        CHECK(e.frequency(1, 0) == 1.0);
    }
    SUBCASE("spread measures of the indicator") {
        EnsembleResult r;
        r.node_count = 1;
        r.snapshots = 1;
        r.runs = 4;
        r.counts = {1};
        CHECK(r.frequency(0, 0) == 0.25);
        CHECK(r.sd(0, 0) == doctest::Approx(0.5));  // sample sd of {1,0,0,0}
        CHECK(r.quantile(0, 0, 0.05) == 0.0);
        CHECK(r.quantile(0, 0, 0.95) == doctest::Approx(0.85));
        CHECK(binary_quantile(3, 4, 0.5) == 1.0);
        CHECK(binary_quantile(0, 4, 0.95) == 0.0);
    }
    SUBCASE("errors") {
        EnsembleOptions o;
        CHECK_THROWS_AS(simulate_ensemble(net, std::vector<ParamSet>{}, s, {2014, 12}, 1, o), ConfigError);
        o.runs = 0;
        CHECK_THROWS_AS(simulate_ensemble(net, draws, s, {2014, 12}, 1, o), ConfigError);
    }
}

TEST_CASE("ensemble output does not depend on the worker count") {
    const auto net = testing::fixture_network();
    std::vector<std::uint8_t> inf(60, 0);
    for (int i : {12, 27, 33, 44, 46, 58}) inf[i] = 1;
    const State s(net, inf);
    const std::vector<ParamSet> draws{ParamSet::make(0.25, 0.3, 0.06, 0.04, 0.007, 0.006),
                                      ParamSet::make(0.2, 0.35, 0.08, 0.03, 0.005, 0.008)};
    EnsembleOptions o;
    o.runs = 3000;
    o.master_seed = 17;
    o.workers = 1;
    const auto a = simulate_ensemble(net, draws, s, {2017, 1}, 8, o);
    o.workers = 4;
    const auto b = simulate_ensemble(net, draws, s, {2017, 1}, 8, o);
    CHECK(a.counts == b.counts);
}
