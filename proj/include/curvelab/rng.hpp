#ifndef CURVELAB_RNG_HPP
#define CURVELAB_RNG_HPP

#include <cstdint>
#include <random>

namespace curvelab {

// Deterministic stream; mt19937_64 output is pinned by the standard, so
// identical seeds reproduce identical fixtures on any platform.
class Rng {
  public:
    explicit Rng(uint64_t seed) : eng_(seed), seed_(seed) {}

    uint64_t next() { return eng_(); }

    // in [0, bound)
    uint64_t below(uint64_t bound) { return eng_() % bound; }

    uint64_t seed() const { return seed_; }

    // Independent per-trial stream (trials never share state).
    static Rng derive(uint64_t seed, uint64_t trial_index) {
        return Rng(seed ^ (0x9e3779b97f4a7c15ull * (trial_index + 1)));
    }

  private:
    std::mt19937_64 eng_;
    uint64_t seed_;
};

}  // namespace curvelab

#endif
