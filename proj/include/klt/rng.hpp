#ifndef KLT_RNG_HPP
#define KLT_RNG_HPP

#include <cmath>
#include <cstdint>

namespace klt {

// Deterministic random streams. Everything here is fixed by the constants
// below, so identical seeds give bit-identical output on any platform with
// IEEE-754 doubles.
//
// SplitMix64: state walks by the 64-bit golden-ratio increment
// 0x9e3779b97f4a7c15; each output is the state passed through the
// xor-shift-multiply finalizer (shifts 30/27/31, multipliers
// 0xbf58476d1ce4e5b9 and 0x94d049bb133111eb).
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

  private:
    std::uint64_t state_;
};

// xoshiro256++: four 64-bit shift-register words; output rotl(s0+s3, 23)+s0;
// the state update xors shifted words and rotates s3 by 45.
class Xoshiro256pp {
  public:
    explicit Xoshiro256pp(std::uint64_t seed) {
        SplitMix64 sm(seed);
        seed_state(sm);
    }

    // Substream `index` of a master seed: jump the SplitMix64 walk to
    // position 4*index (four states are consumed per substream) and draw the
    // four state words there. Substreams never overlap, so per-path
    // generation is order-independent.
    static Xoshiro256pp substream(std::uint64_t seed, std::uint64_t index) {
        SplitMix64 sm(seed + 4ULL * index * 0x9e3779b97f4a7c15ULL);
        Xoshiro256pp g(sm);
        return g;
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform on (0,1]: top 53 bits of the output word, shifted into the
    // double mantissa, offset by one ulp so log() is always finite.
    double uniform01() {
        return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
    }

  private:
    explicit Xoshiro256pp(SplitMix64& sm) { seed_state(sm); }

    void seed_state(SplitMix64& sm) {
        for (auto& w : s_) w = sm.next();
        if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 0x9e3779b97f4a7c15ULL;
    }

    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t s_[4];
};

// Standard normals via Box-Muller on the (0,1] stream, pairwise.
class GaussianStream {
  public:
    explicit GaussianStream(Xoshiro256pp gen) : gen_(gen) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = gen_.uniform01();
        double u2 = gen_.uniform01();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

  private:
    Xoshiro256pp gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace klt

#endif
