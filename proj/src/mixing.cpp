#include "fpoly/mixing.hpp"
#include "fpoly/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fpoly {

namespace {

double decay_bound(const FiniteRangeDecay& d, long long m) {
    return m <= d.m0 ? d.level : 0.0;
}

double decay_bound(const PolynomialDecay& d, long long m) {
    return std::min(d.cap, std::pow(static_cast<double>(m), -d.theta));
}

double decay_bound(const TableDecay& d, long long m) {
    const auto n = static_cast<long long>(d.values.size());
    if (m <= n)
        return d.values[static_cast<std::size_t>(m - 1)];
    switch (d.tail) {
    case TableDecay::Tail::zero:
        return 0.0;
    case TableDecay::Tail::polynomial:
        return std::pow(static_cast<double>(m), -d.tail_theta);
    case TableDecay::Tail::none:
    default:
        throw NonSummableError("table profile has no declared tail");
    }
}

// shell_count as a double-valued polynomial, usable far beyond the
// 64-bit overflow point of the exact counter.
double shell_count_dbl(int d, double j) {
    return std::pow(2.0 * j + 1.0, d) - std::pow(2.0 * j - 1.0, d);
}

// sum_{j>N} j^{-s} for s > 1: explicit head plus an Euler-Maclaurin
// remainder; absolute error below 1e-15 for every s > 1.
double zeta_tail(double s, long long n) {
    if (!(s > 1.0))
        throw NonSummableError("zeta_tail: exponent must exceed 1");
    const long long h = std::max(n, 256LL);
    double sum = 0.0;
    for (long long j = n + 1; j <= h; ++j)
        sum += std::pow(static_cast<double>(j), -s);
    const double m = static_cast<double>(h + 1);
    const double fm = std::pow(m, -s);
    sum += m * fm / (s - 1.0);             // integral from m
    sum += 0.5 * fm;                       // f(m)/2
    sum += s * fm / (12.0 * m);            // -f'(m)/12
    sum -= s * (s + 1.0) * (s + 2.0) * fm / (720.0 * m * m * m);
    return sum;
}

// Exact value of sum_{j>from} j^d * j^{-theta} * shell_count(d,j):
// the shell polynomial splits the sum into zeta tails.
double power_tail(int d, double theta, long long from) {
    if (!(theta > 2.0 * d))
        throw NonSummableError("power tail with theta <= 2d is not summable");
    double total = 0.0;
    double binom = 1.0; // C(d, i) built incrementally
    for (int i = 0; i <= d; ++i) {
        if ((d - i) % 2 == 1) {
            const double coef = 2.0 * binom * std::pow(2.0, i);
            total += coef * zeta_tail(theta - d - i, from);
        }
        binom = binom * (d - i) / (i + 1.0);
    }
    return total;
}

// First index at which a capped power curve leaves the cap.
long long cap_end(double theta, double cap) {
    if (!std::isfinite(cap) || cap >= 1.0)
        return 0;
    long long j = static_cast<long long>(std::ceil(std::pow(cap, -1.0 / theta)));
    while (std::pow(static_cast<double>(j), -theta) > cap)
        ++j;
    while (j > 1 && std::pow(static_cast<double>(j - 1), -theta) <= cap)
        --j;
    return j - 1; // bound(j) == cap for j <= cap_end
}

} // namespace

double MixingProfile::bound(long long m) const {
    if (m < 1)
        throw std::invalid_argument("MixingProfile::bound: m must be >= 1");
    return std::visit([m](const auto& d) { return decay_bound(d, m); }, decay);
}

std::string MixingProfile::describe() const {
    std::ostringstream os;
    os << (kind == MixingKind::alpha ? "alpha" : "rho");
    os << "[tau=" << (tau.infinite ? std::string("inf") : std::to_string(tau.value)) << "] ";
    if (const auto* fr = std::get_if<FiniteRangeDecay>(&decay))
        os << "finite_range(m0=" << fr->m0 << ", level=" << fr->level << ")";
    else if (const auto* p = std::get_if<PolynomialDecay>(&decay)) {
        os << "polynomial(theta=" << p->theta;
        if (std::isfinite(p->cap))
            os << ", cap=" << p->cap;
        os << ")";
    } else if (const auto* t = std::get_if<TableDecay>(&decay)) {
        os << "table(" << t->values.size() << " entries, tail=";
        switch (t->tail) {
        case TableDecay::Tail::zero: os << "zero"; break;
        case TableDecay::Tail::polynomial: os << "m^-" << t->tail_theta; break;
        default: os << "none"; break;
        }
        os << ")";
    }
    return os.str();
}

unsigned long long shell_count(int d, long long m) {
    if (d < 1 || m < 1)
        throw std::invalid_argument("shell_count: need d >= 1 and m >= 1");
    auto ipow = [](unsigned __int128 base, int e) {
        unsigned __int128 r = 1;
        for (int i = 0; i < e; ++i) {
            r *= base;
            if (r > static_cast<unsigned __int128>(-1) / (base + 1))
                throw std::overflow_error("shell_count: overflow");
        }
        return r;
    };
    const unsigned __int128 outer = ipow(static_cast<unsigned __int128>(2 * m + 1), d);
    const unsigned __int128 inner = ipow(static_cast<unsigned __int128>(2 * m - 1), d);
    const unsigned __int128 diff = outer - inner;
    if (diff > static_cast<unsigned __int128>(~0ULL))
        throw std::overflow_error("shell_count: result exceeds 64 bits");
    return static_cast<unsigned long long>(diff);
}

double psi(const MixingProfile& profile, int d, long long m) {
    if (d < 1 || m < 1)
        throw std::invalid_argument("psi: need d >= 1 and m >= 1");

    auto head_sum = [&](long long from, long long to, auto bound_fn) {
        double s = 0.0;
        for (long long j = from; j <= to; ++j)
            s += std::pow(static_cast<double>(j), d) * bound_fn(j) *
                 shell_count_dbl(d, static_cast<double>(j));
        return s;
    };

    if (const auto* fr = std::get_if<FiniteRangeDecay>(&profile.decay)) {
        if (m >= fr->m0)
            return 0.0;
        return head_sum(m + 1, fr->m0, [&](long long) { return fr->level; });
    }

    if (const auto* tb = std::get_if<TableDecay>(&profile.decay)) {
        const auto n = static_cast<long long>(tb->values.size());
        if (tb->tail == TableDecay::Tail::none)
            throw NonSummableError("psi: table profile has no declared tail");
        double total = 0.0;
        if (m < n)
            total += head_sum(m + 1, n, [&](long long j) { return profile.bound(j); });
        if (tb->tail == TableDecay::Tail::polynomial)
            total += power_tail(d, tb->tail_theta, std::max(m, n));
        return total;
    }

    const auto& poly = std::get<PolynomialDecay>(profile.decay);
    if (!(poly.theta > 2.0 * d))
        throw NonSummableError("psi: polynomial profile with theta <= 2d is not summable");
    const long long capped = cap_end(poly.theta, poly.cap);
    double total = 0.0;
    if (m < capped)
        total += head_sum(m + 1, capped, [&](long long) { return poly.cap; });
    total += power_tail(d, poly.theta, std::max(m, capped));
    return total;
}

BlockingSequence blocking_sequence(const MixingProfile& profile, int d, double b_n) {
    if (!(b_n > 0.0 && b_n < 1.0))
        throw std::invalid_argument("blocking_sequence: need 0 < b < 1");
    if (d < 1)
        throw std::invalid_argument("blocking_sequence: need d >= 1");

    BlockingSequence seq;
    seq.d = d;
    seq.b_n = b_n;
    seq.v_n = static_cast<long long>(std::floor(std::pow(b_n, -1.0 / (2.0 * d))));
    const double psi_v = psi(profile, d, seq.v_n);
    const long long grown =
        static_cast<long long>(std::floor(std::pow(psi_v / b_n, 1.0 / d))) + 1;
    seq.m_n = std::max(seq.v_n, grown);
    seq.tail = psi(profile, d, seq.m_n);
    return seq;
}

Lemma1Diagnostic lemma1_diagnostic(const MixingProfile& profile, int d,
                                   const std::vector<double>& b_schedule) {
    if (b_schedule.empty())
        throw std::invalid_argument("lemma1_diagnostic: empty schedule");
    for (std::size_t i = 0; i < b_schedule.size(); ++i) {
        if (!(b_schedule[i] > 0.0 && b_schedule[i] < 1.0))
            throw std::invalid_argument("lemma1_diagnostic: schedule values must lie in (0,1)");
        if (i > 0 && !(b_schedule[i] < b_schedule[i - 1]))
            throw std::invalid_argument("lemma1_diagnostic: schedule must be strictly decreasing");
    }

    Lemma1Diagnostic diag;
    diag.rows.reserve(b_schedule.size());
    for (double b : b_schedule) {
        const BlockingSequence s = blocking_sequence(profile, d, b);
        const double mdb = std::pow(static_cast<double>(s.m_n), d) * b;
        diag.rows.push_back(Lemma1Row{b, s.v_n, s.m_n, mdb, s.tail / mdb});
    }
    diag.m_n_nondecreasing = true;
    diag.m_d_b_nonincreasing = true;
    diag.tail_ratio_nonincreasing = true;
    for (std::size_t i = 1; i < diag.rows.size(); ++i) {
        diag.m_n_nondecreasing &= diag.rows[i].m_n >= diag.rows[i - 1].m_n;
        diag.m_d_b_nonincreasing &= diag.rows[i].m_d_b <= diag.rows[i - 1].m_d_b;
        diag.tail_ratio_nonincreasing &= diag.rows[i].tail_ratio <= diag.rows[i - 1].tail_ratio;
    }
    return diag;
}

TheoremCondition theorem_condition_from_string(const std::string& s) {
    if (s == "prop1_i") return TheoremCondition::prop1_i;
    if (s == "prop1_ii") return TheoremCondition::prop1_ii;
    if (s == "thm1_i") return TheoremCondition::thm1_i;
    if (s == "thm1_ii") return TheoremCondition::thm1_ii;
    throw std::invalid_argument("unknown condition '" + s +
                                "' (expected prop1_i, prop1_ii, thm1_i or thm1_ii)");
}

std::string to_string(TheoremCondition c) {
    switch (c) {
    case TheoremCondition::prop1_i: return "prop1_i";
    case TheoremCondition::prop1_ii: return "prop1_ii";
    case TheoremCondition::thm1_i: return "thm1_i";
    case TheoremCondition::thm1_ii: return "thm1_ii";
    }
    return "?";
}

HypothesisCertificate hypothesis_check(const MixingProfile& profile, int d,
                                       TheoremCondition condition) {
    if (d < 1)
        throw std::invalid_argument("hypothesis_check: need d >= 1");

    const bool alpha_route =
        condition == TheoremCondition::prop1_i || condition == TheoremCondition::thm1_i;
    const bool needs_inf_tau =
        condition == TheoremCondition::thm1_i || condition == TheoremCondition::thm1_ii;

    if (alpha_route && profile.kind != MixingKind::alpha)
        throw std::invalid_argument("hypothesis_check: condition " + to_string(condition) +
                                    " needs an alpha profile");
    if (!alpha_route && profile.kind != MixingKind::rho)
        throw std::invalid_argument("hypothesis_check: condition " + to_string(condition) +
                                    " needs a rho profile");
    if (needs_inf_tau && !profile.tau.infinite)
        throw std::invalid_argument("hypothesis_check: condition " + to_string(condition) +
                                    " needs a tau = infinity profile");

    const int w = alpha_route ? 2 * d - 1 : d - 1;

    auto weighted_head = [&](long long from, long long to) {
        double s = 0.0;
        for (long long m = from; m <= to; ++m)
            s += std::pow(static_cast<double>(m), w) * profile.bound(m);
        return s;
    };

    HypothesisCertificate cert;
    std::ostringstream detail;

    if (const auto* fr = std::get_if<FiniteRangeDecay>(&profile.decay)) {
        cert.satisfied = true;
        cert.sum = weighted_head(1, fr->m0);
        detail << "finite range m0=" << fr->m0 << ": sum of " << fr->m0
               << " terms at level " << fr->level;
        cert.detail = detail.str();
        return cert;
    }

    double theta = 0.0;
    long long head_end = 0;
    if (const auto* tb = std::get_if<TableDecay>(&profile.decay)) {
        const auto n = static_cast<long long>(tb->values.size());
        if (tb->tail == TableDecay::Tail::none)
            throw NonSummableError("hypothesis_check: cannot certify (table tail undeclared)");
        if (tb->tail == TableDecay::Tail::zero) {
            cert.satisfied = true;
            cert.sum = weighted_head(1, n);
            cert.detail = "table with zero tail: finite sum";
            return cert;
        }
        theta = tb->tail_theta;
        head_end = n;
    } else {
        const auto& poly = std::get<PolynomialDecay>(profile.decay);
        theta = poly.theta;
        head_end = cap_end(poly.theta, poly.cap);
    }

    // Tail behaves as m^{w - theta}: converges iff theta - w > 1.
    const double s_exp = theta - w;
    if (!(s_exp > 1.0)) {
        cert.satisfied = false;
        cert.sum = std::numeric_limits<double>::infinity();
        detail << "sum_m m^" << w << " * m^-" << theta << " = sum_m m^-" << s_exp
               << (s_exp == 1.0 ? " (harmonic)" : "") << " diverges";
        cert.detail = detail.str();
        return cert;
    }

    const long long h = std::max(head_end, 256LL);
    cert.satisfied = true;
    cert.sum = weighted_head(1, h) + zeta_tail(s_exp, h);
    detail << "tail exponent " << s_exp << " > 1; series certified convergent "
           << "(explicit head through m=" << h << ", Euler-Maclaurin tail)";
    cert.detail = detail.str();
    return cert;
}

} // namespace fpoly
