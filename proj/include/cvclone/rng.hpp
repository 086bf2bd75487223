#pragma once

#include <cstdint>
#include <random>

namespace cvclone {

// Deterministic normal-variate stream addressed by (master seed, shot, draw).
// Two streams with the same address produce identical sequences regardless of
// which thread creates them or in what order.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t shot, std::uint64_t draw);

    double normal(double mean, double stddev);
    double standard_normal() { return normal(0.0, 1.0); }

    static std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t shot,
                                     std::uint64_t draw);

private:
    std::mt19937_64 engine_;
};

}  // namespace cvclone
