#include <quad3/quadfield.hpp>

namespace quad3::qf {

FieldSpec field_from(const Int& n, const arith::FactorEffort& effort) {
    if (n == 0) throw std::invalid_argument("field_from: n must be nonzero");
    auto [d, t] = arith::squarefree_part(n, effort);
    if (d == 1)
        throw std::invalid_argument(
            "field_from: perfect square, not a quadratic field");
    FieldSpec spec;
    spec.d = d;
    // fundamental discriminant: d itself when d = 1 (mod 4), else 4d
    spec.delta = (mpz_fdiv_ui(d.get_mpz_t(), 4) == 1) ? d : Int(4 * d);
    spec.is_real = d > 0;
    return spec;
}

Int mirror_d(const Int& d, const arith::FactorEffort& effort) {
    if (d == 1 || d == -3)
        throw std::invalid_argument("mirror_d: undefined for d = 1 and d = -3");
    if (d == 0 || arith::squarefree_part(d, effort).first != d)
        throw std::invalid_argument("mirror_d: d must be square-free");
    if (mpz_divisible_ui_p(d.get_mpz_t(), 3)) return Int(-d / 3);
    return Int(-3 * d);
}

} // namespace quad3::qf
