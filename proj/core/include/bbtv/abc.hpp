#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bbtv/io.hpp"
#include "bbtv/network.hpp"
#include "bbtv/params.hpp"
#include "bbtv/random.hpp"
#include "bbtv/sis.hpp"
#include "bbtv/summary.hpp"

namespace bbtv {

/// Independent uniform priors per parameter; default [0,1]^6.
struct Prior {
    std::array<double, ParamSet::size> lower{0, 0, 0, 0, 0, 0};
    std::array<double, ParamSet::size> upper{1, 1, 1, 1, 1, 1};

    /// Throws ConfigError unless 0 <= lower < upper <= 1 componentwise.
    void validate() const;
    [[nodiscard]] bool contains(const ParamSet& p) const;
    ParamSet sample(RandomStream& rng) const;
};

struct PosteriorDraw {
    ParamSet params;
    double discrepancy{0.0};
    std::uint64_t iteration{0};
    bool accepted_proposal{true};

    friend bool operator==(const PosteriorDraw&, const PosteriorDraw&) = default;
};

/// Everything the samplers need to simulate a dataset like the observed one.
class AbcModel {
public:
    /// Observed data define the initial state (first snapshot), start month
    /// and horizon (snapshots - 1).
    AbcModel(const Network& net, const ObservationSeries& observed);

    [[nodiscard]] const Network& network() const { return *net_; }
    [[nodiscard]] const SummaryVector& observed_summary() const { return observed_summary_; }
    [[nodiscard]] const State& initial() const { return initial_; }
    [[nodiscard]] YearMonth start() const { return start_; }
    [[nodiscard]] std::size_t horizon() const { return horizon_; }

    /// Per-thread scratch space.
    class Workspace {
    public:
        explicit Workspace(const AbcModel& model);

    private:
        friend class AbcModel;
        Simulator simulator_;
        Trajectory trajectory_;
        SummaryScratch scratch_;
        SummaryVector summary_;
    };

    /// Simulates once and returns the discrepancy to the observed summary.
    double simulate_discrepancy(const ParamSet& params, RandomStream& rng, Workspace& ws) const;

    /// An upper bound on any attainable discrepancy for this dataset.
    [[nodiscard]] double max_discrepancy() const;

private:
    const Network* net_;
    State initial_;
    YearMonth start_;
    std::size_t horizon_;
    SummaryVector observed_summary_;
    std::size_t summer_transitions_{0};
    std::size_t winter_transitions_{0};
};

/// Monte-Carlo ABC likelihood with the indicator kernel:
/// (1/n) * #{i : rho(S(x_i), S(y)) <= epsilon}. epsilon may be 0; throws
/// ConfigError for negative epsilon or n == 0.
double abc_likelihood(const AbcModel& model, const ParamSet& params, std::size_t n, double epsilon,
                      RandomStream& rng);

struct RejectionResult {
    std::vector<PosteriorDraw> accepted;
    std::size_t attempted{0};
    [[nodiscard]] double acceptance_rate() const {
        return attempted == 0 ? 0.0 : static_cast<double>(accepted.size()) / static_cast<double>(attempted);
    }
    /// Non-empty when nothing was accepted.
    std::string diagnostic;
};

/// ABC rejection. Draw i uses RandomStream::derive(seed, i) for both its
/// prior sample and its simulation, so output is independent of workers.
RejectionResult rejection_sample(const AbcModel& model, const Prior& prior, std::size_t n_draws, double epsilon,
                                 std::uint64_t master_seed, unsigned workers = 1);

/// Prior-predictive discrepancies, used to pick a tolerance.
std::vector<double> pilot_discrepancies(const AbcModel& model, const Prior& prior, std::size_t n,
                                        std::uint64_t master_seed, unsigned workers = 1);

struct McmcConfig {
    std::size_t iterations{10'000'000};
    std::size_t burn_in{100'000};
    std::size_t thin{200};
    double epsilon{23.0};
    std::array<double, ParamSet::size> proposal_sd{0.02, 0.02, 0.005, 0.005, 0.005, 0.005};
    std::uint64_t master_seed{0};
    std::size_t init_attempt_cap{100'000};

    /// Throws ConfigError on burn_in >= iterations, thin == 0, epsilon <= 0,
    /// or a non-positive proposal sd.
    void validate() const;
};

struct McmcStats {
    std::size_t iterations{0};
    std::size_t proposals_in_bounds{0};
    std::size_t proposals_accepted{0};
    std::size_t init_attempts{0};
    [[nodiscard]] double acceptance_rate() const {
        return iterations <= 1 ? 0.0
                               : static_cast<double>(proposals_accepted) / static_cast<double>(iterations - 1);
    }
};

/// ABC-MCMC with a Gaussian random walk. Entry 0 is the initial state found
/// by prior sampling (up to init_attempt_cap, else NumericalError); each
/// later entry is the outcome of one proposal. Out-of-bounds proposals are
/// rejected without simulating. `visit` is called once per chain entry.
McmcStats mcmc_run(const AbcModel& model, const Prior& prior, const McmcConfig& config,
                   const std::function<void(const PosteriorDraw&)>& visit);

struct McmcResult {
    std::vector<PosteriorDraw> chain;
    McmcStats stats;
};

/// Full chain of length config.iterations.
McmcResult mcmc_chain(const AbcModel& model, const Prior& prior, const McmcConfig& config);

/// Keeps indices burn_in, burn_in + thin, ... Throws ConfigError if
/// burn_in >= chain length or thin == 0.
std::vector<PosteriorDraw> thin_and_burn(std::span<const PosteriorDraw> chain, std::size_t burn_in, std::size_t thin);

/// Retained-count after thin_and_burn, without materialising the chain.
std::size_t thinned_length(std::size_t length, std::size_t burn_in, std::size_t thin);

/// Draws with discrepancy <= epsilon_prime, order preserved. Throws
/// ConfigError if epsilon_prime exceeds the generation tolerance.
std::vector<PosteriorDraw> threshold_filter(std::span<const PosteriorDraw> draws, double epsilon_prime,
                                            double generation_epsilon);

// Draw file: metadata line, header, then
//   iteration,<six parameters>,discrepancy,accepted_proposal
struct DrawFile {
    Metadata metadata;
    std::vector<PosteriorDraw> draws;
    /// Generation tolerance from the metadata, if recorded.
    [[nodiscard]] std::optional<double> epsilon() const;
};

void write_draws(std::ostream& out, std::span<const PosteriorDraw> draws);
DrawFile read_draws(std::istream& in);
std::vector<ParamSet> params_of(std::span<const PosteriorDraw> draws);

}  // namespace bbtv
