#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace bakerlab {

/// Long-time fate of a point under L. P_A and AB have measure-zero basins
/// and are never reported.
enum class AttractorId : std::uint8_t { PD = 0, CDCD = 1, BInv = 2, CInv = 3, Nonconvergent = 4 };

inline constexpr std::array<AttractorId, 5> kAllAttractors = {
    AttractorId::PD, AttractorId::CDCD, AttractorId::BInv, AttractorId::CInv, AttractorId::Nonconvergent};

std::string_view attractor_name(AttractorId id) noexcept;

/// Fraction of classified points per attractor, indexed by AttractorId.
struct BasinMeasures {
    std::array<double, 5> fraction{};

    double operator[](AttractorId id) const noexcept { return fraction[static_cast<std::size_t>(id)]; }
    double& operator[](AttractorId id) noexcept { return fraction[static_cast<std::size_t>(id)]; }
};

} // namespace bakerlab
