#include "sigdist/sigma_algebra.hpp"

#include <cstdint>
#include <string>

#include "sigdist/error.hpp"

namespace sigdist {

bool SigmaAlgebra::contains(const SubsetMask& s) const {
    if (s.size() != size()) {
        throw Error(ErrorCode::GroundSetMismatch, "subset of size " + std::to_string(s.size()) +
                                                      " tested against σ-algebra on " + std::to_string(size()));
    }
    // 0 = unseen, 1 = inside s, 2 = outside s
    std::vector<std::uint8_t> state(atoms_.block_count(), 0);
    for (std::size_t p = 0; p < size(); ++p) {
        const std::uint8_t here = s.test(p) ? 1 : 2;
        std::uint8_t& seen = state[atoms_.label(p)];
        if (seen == 0) {
            seen = here;
        } else if (seen != here) {
            return false;
        }
    }
    return true;
}

} // namespace sigdist
