#include <quad3/classgroup.hpp>

#include <quad3/quadfield.hpp>

#include <unordered_map>
#include <unordered_set>

namespace quad3::cg {

namespace {

/* (a, b) determines c through the discriminant, so a packed (a, b) pair is
 * a collision-free key for reduced indefinite forms (|a|, b < sqrt(delta)
 * <= 1e6 at the largest permitted cutoff). */
int64_t form_key(long long a, long long b) {
    return (static_cast<int64_t>(a) << 24) ^ b;
}

void require_fundamental(const Int& delta) {
    if (!is_fundamental(delta))
        throw std::invalid_argument("discriminant is not fundamental");
}

long long to_ll(const Int& v) { return mpz_get_si(v.get_mpz_t()); }

} // namespace

std::string method_name(Method m) {
    switch (m) {
        case Method::form_count: return "form-count";
        case Method::form_cycles: return "form-cycles";
        case Method::analytic_oracle: return "analytic-oracle";
    }
    return "?";
}

bool is_fundamental(const Int& delta) {
    if (delta == 0 || delta == 1) return false;
    unsigned long r4 = mpz_fdiv_ui(delta.get_mpz_t(), 4);
    if (r4 == 1) return arith::squarefree_part(delta).second == 1;
    if (r4 != 0) return false;
    Int m = delta / 4;
    unsigned long m4 = mpz_fdiv_ui(m.get_mpz_t(), 4);
    if (m4 != 2 && m4 != 3) return false;
    return arith::squarefree_part(m).second == 1;
}

std::vector<QuadForm> reduced_forms_imaginary(const Int& delta,
                                              const Cutoffs& cutoffs) {
    if (delta >= 0)
        throw std::invalid_argument("reduced_forms_imaginary: delta must be < 0");
    require_fundamental(delta);
    if (-delta > cutoffs.imaginary)
        throw size_limit_exceeded("imaginary discriminant above cutoff");

    const long long D = to_ll(Int(-delta)); // |delta| <= 1e10 fits
    const long long parity = D & 1;         // delta = 1 (mod 4) <=> |delta| odd
    std::vector<QuadForm> forms;
    long long amax = to_ll(arith::isqrt(Int(static_cast<long>(D / 3))));
    for (long long a = 1; a <= amax; ++a) {
        for (long long b = parity; b <= a; b += 2) {
            long long t = b * b + D; // b^2 - delta
            if (t % (4 * a)) continue;
            long long c = t / (4 * a);
            if (c < a) continue;
            forms.push_back({a, b, c});
            // (a, -b, c) is a distinct reduced form unless b = 0 or the
            // boundary cases |b| = a, a = c (where only b >= 0 is reduced)
            if (b != 0 && b != a && a != c) forms.push_back({a, -b, c});
        }
    }
    return forms;
}

ClassNumberResult class_number_imaginary(const Int& delta,
                                         const Cutoffs& cutoffs) {
    auto forms = reduced_forms_imaginary(delta, cutoffs);
    ClassNumberResult res;
    res.delta = delta;
    res.d = (mpz_fdiv_ui(delta.get_mpz_t(), 4) == 1) ? delta : Int(delta / 4);
    res.h = static_cast<long long>(forms.size());
    res.h_narrow = res.h;
    res.unit_norm = 0;
    res.method = Method::form_count;
    return res;
}

long long class_number_imaginary_analytic(const Int& delta) {
    if (delta >= 0)
        throw std::invalid_argument("analytic class number: delta must be < 0");
    require_fundamental(delta);
    // h = w/(2|delta|) * |sum_{k=1}^{|delta|-1} (delta/k) k|, exact
    if (!delta.fits_slong_p())
        throw size_limit_exceeded("analytic class number: delta too large");
    const long long D = to_ll(delta);
    const long long absD = -D;
    __int128 sum = 0;
    for (long long k = 1; k < absD; ++k)
        sum += static_cast<__int128>(arith::kronecker(D, k)) * k;
    if (sum < 0) sum = -sum;
    const long long w = (D == -3) ? 6 : (D == -4) ? 4 : 2;
    __int128 num = static_cast<__int128>(w) * sum;
    __int128 den = static_cast<__int128>(2) * absD;
    if (num % den != 0)
        throw std::logic_error("analytic class number: non-integral result");
    return static_cast<long long>(num / den);
}

UnitNorm cf_unit_norm(const Int& d) {
    if (d <= 1) throw std::invalid_argument("cf_unit_norm: need d > 1");
    {
        auto [sf, t] = arith::squarefree_part(d);
        if (t != 1) throw std::invalid_argument("cf_unit_norm: d must be square-free");
    }
    if (!d.fits_slong_p())
        throw size_limit_exceeded("cf_unit_norm: d too large");
    const long long dv = to_ll(d);
    const long long s = to_ll(arith::isqrt(d));

    // omega = (1+sqrt d)/2 for d = 1 (mod 4), else sqrt d; iterate the
    // state (P, Q) of (P + sqrt d)/Q until the first repeat
    long long P = 0, Q = 1;
    if (((dv % 4) + 4) % 4 == 1) {
        P = 1;
        Q = 2;
    }
    std::unordered_map<int64_t, uint64_t> seen;
    uint64_t i = 0;
    for (;;) {
        int64_t key = (static_cast<int64_t>(P) << 32) ^ Q;
        auto [it, fresh] = seen.emplace(key, i);
        if (!fresh) {
            uint64_t period = i - it->second;
            return UnitNorm{period, (period & 1) ? -1 : +1};
        }
        long long a = (P + s) / Q; // Q > 0 throughout (see below)
        long long P1 = a * Q - P;
        long long Q1 = (dv - P1 * P1) / Q;
        // Q1 > 0: P1^2 < d once the expansion is underway, and d is not a
        // perfect square, so the sign never degenerates
        P = P1;
        Q = Q1;
        ++i;
    }
}

namespace {

struct RealForm {
    long long a, b, c;
};

/* rho((a,b,c)) = (c, b', (b'^2 - delta)/(4c)) with b' = -b (mod 2|c|)
 * maximal below sqrt(delta). */
RealForm rho_step(const RealForm& f, long long delta, long long s) {
    long long ac = std::llabs(f.c);
    long long k = (s + f.b) / (2 * ac);
    long long b1 = -f.b + 2 * ac * k;
    long long c1 = (b1 * b1 - delta) / (4 * f.c);
    return {f.c, b1, c1};
}

} // namespace

ClassNumberResult class_number_real(const Int& delta, const Cutoffs& cutoffs) {
    if (delta <= 0)
        throw std::invalid_argument("class_number_real: delta must be > 0");
    {
        Int r = arith::isqrt(delta);
        if (r * r == delta)
            throw std::invalid_argument("class_number_real: delta is a square");
    }
    require_fundamental(delta);
    if (delta > cutoffs.real)
        throw size_limit_exceeded("real discriminant above cutoff");

    const long long D = to_ll(delta);
    const long long s = to_ll(arith::isqrt(delta));

    // enumerate reduced forms: 0 < b < sqrt(D), b = D (mod 2), and for
    // N = (D - b^2)/4 every divisor split N = |a||c| with both halves in
    // the window (sqrt(D)-b, sqrt(D)+b)/2; signs (a, -c) and (-a, c)
    std::vector<RealForm> forms;
    std::unordered_set<int64_t> keys;
    for (long long b = 2 - (D & 1); b <= s; b += 2) {
        long long N = (D - b * b) / 4;
        for (uint64_t g64 : arith::divisors_u64(static_cast<uint64_t>(N))) {
            long long g = static_cast<long long>(g64);
            if (g > s) break; // divisors ascend; window needs 2g < sqrt(D)+b <= 2 sqrt(D)
            // window test, exactly: 2g + b > sqrt(D) and 2g - b < sqrt(D)
            long long lo = 2 * g + b, hi = 2 * g - b;
            if (lo * lo <= D) continue;
            if (hi >= 0 && hi * hi >= D) continue;
            long long other = N / g;
            forms.push_back({g, b, -other});
            forms.push_back({-g, b, other});
            keys.insert(form_key(g, b));
            keys.insert(form_key(-g, b));
        }
    }

    // h+ = number of rho-orbits; walking each orbit must stay inside the
    // enumerated set (consistency check on both routines)
    std::unordered_set<int64_t> visited;
    long long cycles = 0;
    for (const RealForm& f : forms) {
        if (visited.count(form_key(f.a, f.b))) continue;
        ++cycles;
        RealForm g = f;
        do {
            visited.insert(form_key(g.a, g.b));
            g = rho_step(g, D, s);
            if (!keys.count(form_key(g.a, g.b)))
                throw std::logic_error("rho step left the reduced set");
        } while (!(g.a == f.a && g.b == f.b));
    }

    ClassNumberResult res;
    res.delta = delta;
    res.d = (mpz_fdiv_ui(delta.get_mpz_t(), 4) == 1) ? delta : Int(delta / 4);
    UnitNorm un = cf_unit_norm(res.d);
    res.h_narrow = cycles;
    res.unit_norm = un.norm;
    if (un.norm == +1) {
        if (cycles & 1)
            throw std::logic_error("odd cycle count with unit norm +1");
        res.h = cycles / 2;
    } else {
        res.h = cycles;
    }
    res.method = Method::form_cycles;
    return res;
}

ClassNumberResult class_number(const Int& n, const Cutoffs& cutoffs) {
    qf::FieldSpec spec = qf::field_from(n);
    return spec.is_real ? class_number_real(spec.delta, cutoffs)
                        : class_number_imaginary(spec.delta, cutoffs);
}

} // namespace quad3::cg
