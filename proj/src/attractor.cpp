#include "bakerlab/attractor.hpp"

namespace bakerlab {

std::string_view attractor_name(AttractorId id) noexcept {
    switch (id) {
    case AttractorId::PD: return "P_D";
    case AttractorId::CDCD: return "CDCD";
    case AttractorId::BInv: return "B_inv";
    case AttractorId::CInv: return "C_inv";
    case AttractorId::Nonconvergent: return "nonconvergent";
    }
    return "?";
}

} // namespace bakerlab
