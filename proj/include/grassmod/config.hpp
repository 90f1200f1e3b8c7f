#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>

namespace grassmod {

/// Runtime limits and knobs. Precedence: CLI flags > GRASSMOD_* environment
/// variables > the defaults below.
struct Config {
    // Largest Grassmannian that enumerate() will materialize.
    std::size_t max_grassmannian = 200000;
    // Cap on the dimension of any spun/row-reduced module basis.
    std::size_t max_spin_dim = 5000;
    // Cap on the ambient dimension n.
    std::uint32_t max_ambient = 6;
    // |K|^dim threshold below which simplicity is certified exhaustively.
    std::uint64_t max_exhaustive_states = std::uint64_t(1) << 22;
    // Master seed for all pseudorandom draws.
    std::uint64_t seed = 0x5EEDC0DE5EEDC0DEull;
    // Directory for on-disk operator/enumeration caches; empty disables caching.
    std::string cache_dir;

    static Config from_env() {
        Config c;
        if (const char* v = std::getenv("GRASSMOD_MAX_GRASSMANNIAN")) c.max_grassmannian = std::strtoull(v, nullptr, 10);
        if (const char* v = std::getenv("GRASSMOD_MAX_SPIN_DIM")) c.max_spin_dim = std::strtoull(v, nullptr, 10);
        if (const char* v = std::getenv("GRASSMOD_MAX_AMBIENT")) c.max_ambient = std::uint32_t(std::strtoul(v, nullptr, 10));
        if (const char* v = std::getenv("GRASSMOD_SEED")) c.seed = std::strtoull(v, nullptr, 10);
        if (const char* v = std::getenv("GRASSMOD_CACHE_DIR")) c.cache_dir = v;
        return c;
    }
};

inline const Config& default_config() {
    static const Config c = Config::from_env();
    return c;
}

}  // namespace grassmod
