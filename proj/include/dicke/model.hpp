// model.hpp — Dicke-Heisenberg chain: problem definition and parameter conventions
//
//   H = (omega/2)(x^2 + p^2) + eps S^z + g' S^x x - sum_<ij> sum_a J_a s_i^a s_j^a
//
// with g' = 2 g / sqrt(N/2), s = sigma/2 and x = (a + a^dag)/sqrt(2).

#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dicke {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Boundary { open, periodic };

enum class PresetKind { dicke, dicke_ising, dicke_xxz };

std::string to_string(Boundary b);
std::string to_string(PresetKind k);
Boundary boundary_from_string(const std::string& s);
PresetKind preset_from_string(const std::string& s);

struct Couplings {
    double x{0.0};
    double y{0.0};
    double z{0.0};
};

struct ModelSpec {
    int N{2};
    double omega{1.0};
    double epsilon{1.0};
    double g{0.0};
    Couplings J{};
    Boundary boundary{Boundary::open};
    // Tiny staggered longitudinal field h_s sum_i (-1)^i s_i^z used to pick one
    // branch of a degenerate Neel pair. Zero means no pinning.
    double staggered_field{0.0};

    /// Throws ConfigError when an invariant is violated.
    void validate() const;

    /// Nearest-neighbour bonds (i, j) of the chain, i < j except the periodic wrap.
    std::vector<std::pair<int, int>> bonds() const;
};

/// Preset parameters. `J` is the scalar Ising exchange (dicke-ising, mapped to
/// J_z = 4J) and `Jz` the anisotropy (dicke-xxz, with J_x = J_y = 1).
struct ModelPreset {
    PresetKind kind{PresetKind::dicke};
    int N{2};
    double g{0.0};
    double J{0.0};
    double Jz{0.0};
    double omega{1.0};
    double epsilon{1.0};
    Boundary boundary{Boundary::open};

    ModelSpec to_spec() const;
};

/// g' = 2 g / sqrt(N/2).
double effective_single_coupling(const ModelSpec& spec);

/// g_c = sqrt(omega * epsilon) / 2.
double dicke_critical_coupling(const ModelSpec& spec);

/// Ising exchange at which the normal-phase order switches at g = 0: J_c = -eps/4.
double ising_critical_exchange(const ModelSpec& spec);

/// Second-order FM-NP -> PM-SP line of the Dicke-Ising model,
/// g_c(J) = g_c sqrt(1 - J/J_c). Throws std::domain_error for J <= J_c.
double ising_boundary(double J, const ModelSpec& spec);

/// Bulk reference site used for correlation tables: N/4 - 1 (clamped to 0).
int bulk_site(int N);

/// Key-value mapping onto a preset. Recognised keys: preset, N, g, J, Jz, Jx, Jy,
/// omega, epsilon, boundary. Explicit Jx/Jy/Jz override the preset couplings.
ModelSpec model_from_keys(const std::map<std::string, std::string>& kv);

}  // namespace dicke
