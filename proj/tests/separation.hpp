#pragma once

// The projection-composed family separating (3, 2/3) from (1, delta) lossy condensing on F_3^4.

#include <algorithm>

#include "rankforge/seeded.hpp"
#include "rankforge/verify.hpp"

namespace separation {

using namespace rankforge;

/// First collection, by size and then code order, of 1 x 3 maps over F_3 passing (<= 2, 1/2) verification.
/// The <= form also covers lines, so the maps have no common kernel.
inline SeededCondenser base_condenser() {
    auto f3 = make_field(3, 1);
    std::vector<FMatrix> rows;
    for (Elem code = 1; code < 27; ++code) rows.push_back(FMatrix(f3, 1, 3, {code % 3, code / 3 % 3, code / 9}));
    SeededCondenser c;
    c.field = f3;
    c.n = 3;
    c.t = 1;
    c.claim = SeededClaim::lossy(2, Rational(1, 2), RankMode::Le);
    const std::size_t m = rows.size();
    for (std::size_t size = 1; size <= 3; ++size) {
        std::vector<bool> pick(m, false);
        std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(size), true);
        do {
            c.maps.clear();
            for (std::size_t i = 0; i < m; ++i)
                if (pick[i]) c.maps.push_back(rows[i]);
            if (verify_seeded(c).pass) return c;
        } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    throw std::runtime_error("no (<= 2, 1/2) condenser with at most three maps");
}

/// E P for every E, with P the projection F^4 -> F^3 onto the first three coordinates.
inline SeededCondenser projected(const SeededCondenser& c, SeededClaim claim) {
    auto p = FMatrix(c.field, 3, 4, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0});
    SeededCondenser out;
    out.field = c.field;
    out.n = 4;
    out.t = c.t;
    for (const auto& e : c.maps) out.maps.push_back(e * p);
    out.claim = claim;
    return out;
}

} // namespace separation
