#pragma once

// Deterministic random number plumbing. Every estimate owes its stream to a
// single master seed through a fixed derivation chain:
//
//   master seed -> per-estimate seed -> per-trial key -> per-role substream
//
// Substreams let one trial draw its fading variates for different links
// (access, per-hop optical, per-hop radio) from independent generators, so
// two strategies evaluated under the same trial key see identical channel
// realizations. That is what makes paired comparisons and byte-identical
// re-runs work, so the derivation below is part of the output contract and
// must not change between releases.

#include <array>
#include <cstdint>

namespace fsothz {

// splitmix64 step (Steele, Lea, Flood 2014). Used both as a seed expander
// and, with fixed inputs, as the mixing function for seed derivation.
constexpr std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// One-shot avalanche of a 64-bit value (the splitmix64 output function).
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Derives a child seed from a base seed and one or two tags. Order matters:
// derive_seed(a, b) != derive_seed(b, a) in general.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag) {
    std::uint64_t state = base ^ 0xA0761D6478BD642Full;
    state += tag;
    std::uint64_t out = splitmix64_next(state);
    return out ^ splitmix64_next(state);
}

constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag_a,
                                    std::uint64_t tag_b) {
    return derive_seed(derive_seed(base, tag_a), tag_b);
}

// FNV-1a over a byte string; stable tag for strategy names in seed derivation.
constexpr std::uint64_t fnv1a64(const char* data, std::size_t size) {
    std::uint64_t hash = 0xCBF29CE484222325ull;
    for (std::size_t i = 0; i < size; ++i) {
        hash ^= static_cast<unsigned char>(data[i]);
        hash *= 0x100000001B3ull;
    }
    return hash;
}

// xoshiro256++ (Blackman, Vigna 2019). Small, fast, and fully specified here
// so streams are identical across compilers and standard libraries.
class Xoshiro256pp {
public:
    using result_type = std::uint64_t;

    explicit Xoshiro256pp(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : state_) {
            word = splitmix64_next(sm);
        }
        // The all-zero state is the one fixed point of the transition; the
        // expander cannot practically hit it, but guard anyway.
        if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) {
            state_[0] = 0x9E3779B97F4A7C15ull;
        }
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~0ull; }

    result_type operator()() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform double in (0, 1]: 53 random bits shifted into the mantissa,
    // then nudged off zero so log(u) is always finite.
    double uniform01() {
        return static_cast<double>(((*this)() >> 11) + 1) * 0x1.0p-53;
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> state_;
};

// Substream roles within one trial. A role identifies which physical link a
// stream feeds; hop roles are offset by hop index (kHopFso + 1 is the second
// hop's optical stream, and so on).
inline constexpr std::uint32_t kRoleAccess = 0;
inline constexpr std::uint32_t kRoleHopFso = 10;
inline constexpr std::uint32_t kRoleHopSubThz = 20;
inline constexpr std::uint32_t kRoleDirectFso = 30;

// Factory for the per-role generators of a single Monte Carlo trial.
class TrialStream {
public:
    TrialStream(std::uint64_t estimate_seed, std::uint64_t trial_index)
        : trial_key_(derive_seed(estimate_seed, trial_index)) {}

    Xoshiro256pp stream(std::uint32_t role) const {
        return Xoshiro256pp(derive_seed(trial_key_, role));
    }

private:
    std::uint64_t trial_key_;
};

} // namespace fsothz
