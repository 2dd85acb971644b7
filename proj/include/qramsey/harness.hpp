#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "qramsey/certificates.hpp"

namespace qramsey {

inline constexpr std::uint64_t kDefaultSeed = 20240229;

struct McResult {
    std::uint64_t trials = 0;
    std::uint64_t hits = 0;
    double frequency = 0.0;
    double half_width = 0.0;  // 95% Wilson interval, half its length
    double low = 0.0;
    double high = 0.0;
};

/// Fraction of random colorings of Q_N (trial t uses random_coloring with
/// seed derive_seed(seed, t)) that contain a red or a blue copy of Q_n.
/// Requires N <= 10, n <= 3, trials >= 1.
McResult mc_mono_frequency(int n, int n_ground, std::uint64_t trials, std::uint64_t seed);

/// Exact probability of a monochromatic Q_n over all colorings of Q_N, N <= 4.
double exact_mono_probability(int n, int n_ground);

enum class LogBase { Two, E };

/// ceil(3 n log n) in the given base. Throws DomainError for n < 2.
int default_ground(int n, LogBase base);

struct CheckInfo {
    std::string name;
    std::string summary;
    bool slow = false;
};

const std::vector<CheckInfo>& check_registry();

struct ReproduceOptions {
    std::filesystem::path out_dir = "qramsey-out";
    std::uint64_t seed = kDefaultSeed;
    int worker_count = 1;
    std::optional<std::uint64_t> node_cap;
};

/// Runs a registered check in out_dir/<name>, writing its certificates and
/// report.json before returning. The check's seed is derive_seed(seed, i)
/// with i its registry index. Throws UsageError for unknown names.
ExperimentReport reproduce(const std::string& check_name, const ReproduceOptions& options = {});

/// Runs several checks, optionally on separate threads. Each check writes
/// only to its own directory, so results do not depend on `parallel`.
std::vector<ExperimentReport> reproduce_many(const std::vector<std::string>& names,
                                             const ReproduceOptions& options, bool parallel);

}  // namespace qramsey
