#include "bakerlab/itinerary.hpp"

namespace bakerlab {

Itinerary::Itinerary(const std::string& symbols) {
    for (char c : symbols) push_back(region_from_char(c));
}

std::string Itinerary::to_string() const {
    std::string out;
    out.reserve(length_);
    for (std::size_t i = 0; i < length_; ++i) out.push_back(region_char((*this)[i]));
    return out;
}

} // namespace bakerlab
