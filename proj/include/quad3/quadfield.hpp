#pragma once
/* Quadratic fields Q(sqrt(d)) presented by their square-free kernel d and
 * fundamental discriminant delta, plus the 3-divisibility mirror map
 * d <-> -d/3 / -3d that links a field to its companion of discriminant
 * ratio -3 (domain excludes d = 1 and d = -3, where the map degenerates). */

#include <quad3/arith.hpp>

namespace quad3::qf {

using arith::Int;

struct FieldSpec {
    Int d;     // square-free, != 0, 1
    Int delta; // d if d = 1 (mod 4), else 4d
    bool is_real = false;

    bool operator==(const FieldSpec&) const = default;
};

/* Field containing sqrt(n): d = squarefree kernel of n.  Rejects n == 0,
 * perfect squares (d would be 1: not a quadratic field). */
FieldSpec field_from(const Int& n, const arith::FactorEffort& effort = {});

/* d > 0 divisible by 3 -> -d/3;  d > 0 not divisible by 3 -> -3d;
 * d < 0 likewise (sign flips).  Involution on its domain; rejects
 * d in {1, -3} and non-square-free d. */
Int mirror_d(const Int& d, const arith::FactorEffort& effort = {});

} // namespace quad3::qf
