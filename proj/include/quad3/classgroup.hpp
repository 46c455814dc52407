#pragma once
/* Class numbers of quadratic fields from binary quadratic forms.
 *
 * Imaginary: h = number of reduced positive definite forms (a,b,c) of
 * discriminant delta (|b| <= a <= c, b >= 0 when |b| = a or a = c), with an
 * independent analytic oracle h = w/(2|delta|) * |sum k*(delta/k)|.
 *
 * Real: h+ = number of rho-cycles on the reduced indefinite forms
 * (0 < b < sqrt(delta), sqrt(delta)-b < 2|a| < sqrt(delta)+b), and
 * h = h+/2 when the fundamental unit has norm +1 (even continued-fraction
 * period of omega), h = h+ otherwise. */

#include <quad3/arith.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace quad3::cg {

using arith::Int;

/* Work above these |delta| bounds is refused (explicit error, mapped to a
 * "skipped" outcome by callers that sweep tables), so a typo in a fixture
 * cannot silently burn hours. */
struct Cutoffs {
    Int imaginary = Int(10'000'000'000L);     // 1e10
    Int real = Int(1'000'000'000'000L);       // 1e12
};

struct size_limit_exceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct QuadForm {
    long long a = 0, b = 0, c = 0; // a*x^2 + b*x*y + c*y^2

    bool operator==(const QuadForm&) const = default;
};

enum class Method { form_count, form_cycles, analytic_oracle };

std::string method_name(Method m);

struct ClassNumberResult {
    Int d;           // square-free field kernel
    Int delta;       // fundamental discriminant
    long long h = 0; // class number
    long long h_narrow = 0; // narrow class number (== h when delta < 0)
    int unit_norm = 0;      // -1/+1 for real fields, 0 for imaginary
    Method method = Method::form_count;
};

/* True iff delta is a fundamental discriminant (delta = 1 (mod 4) and
 * square-free, or delta = 4m with m square-free, m = 2,3 (mod 4)). */
bool is_fundamental(const Int& delta);

/* All reduced forms of fundamental delta < 0, |delta| <= cutoff. */
std::vector<QuadForm> reduced_forms_imaginary(const Int& delta,
                                              const Cutoffs& cutoffs = {});

ClassNumberResult class_number_imaginary(const Int& delta,
                                         const Cutoffs& cutoffs = {});

/* Independent analytic route (exact character-sum arithmetic; no cutoff —
 * runtime is Theta(|delta|), the caller chooses the scale). */
long long class_number_imaginary_analytic(const Int& delta);

struct UnitNorm {
    uint64_t period = 0; // continued-fraction period of omega
    int norm = 0;        // -1 iff period is odd
};

/* Continued fraction of omega = sqrt(d) (d = 2,3 mod 4) or (1+sqrt(d))/2
 * (d = 1 mod 4) for square-free d > 1; norm of the fundamental unit. */
UnitNorm cf_unit_norm(const Int& d);

ClassNumberResult class_number_real(const Int& delta,
                                    const Cutoffs& cutoffs = {});

/* Any n != 0, not a perfect square: class number of Q(sqrt(n)), i.e. of the
 * square-free kernel of n.  Dispatches on sign. */
ClassNumberResult class_number(const Int& n, const Cutoffs& cutoffs = {});

} // namespace quad3::cg
