#include "cvclone/rng.hpp"

namespace cvclone {

namespace {

// splitmix64 finalizer
std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

std::uint64_t RngStream::derive_seed(std::uint64_t master_seed, std::uint64_t shot,
                                     std::uint64_t draw) {
    return mix(mix(mix(master_seed) ^ shot) ^ (draw * 0xd1b54a32d192ed03ULL));
}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t shot, std::uint64_t draw)
    : engine_(derive_seed(master_seed, shot, draw)) {}

double RngStream::normal(double mean, double stddev) {
    // A fresh distribution per call keeps each value a function of the engine
    // position only.
    std::normal_distribution<double> dist(mean, stddev);
    return dist(engine_);
}

}  // namespace cvclone
