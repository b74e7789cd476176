#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <variant>
#include <vector>

namespace fpoly {

enum class MixingKind { alpha, rho };

// Cardinality parameter tau of the dependence coefficients: the bound
// covers sigma-fields generated by up to tau remote variables. A profile
// certified at tau = infinity covers every smaller tau.
struct TauBound {
    bool infinite = true;
    std::uint32_t value = 0;

    static TauBound inf() { return TauBound{true, 0}; }
    static TauBound finite(std::uint32_t v) { return TauBound{false, v}; }
    bool covers(const TauBound& required) const {
        return infinite || (!required.infinite && value >= required.value);
    }
};

struct FiniteRangeDecay {
    long long m0 = 0;   // bound vanishes for m > m0
    double level = 0.25; // constant value for m <= m0
};

struct PolynomialDecay {
    double theta = 0.0;                                  // bound(m) = min(cap, m^-theta)
    double cap = std::numeric_limits<double>::infinity();
};

// Explicit head values for m = 1..values.size(); the tail is either
// exactly zero, a pure power m^-theta, or undeclared (not certifiable).
struct TableDecay {
    enum class Tail { none, zero, polynomial };
    std::vector<double> values;
    Tail tail = Tail::none;
    double tail_theta = 0.0;
};

// An upper-bound curve m -> bound(m) for alpha_{1,tau}(m) or
// rho_{1,tau}(m). Always a declared hypothesis, never an estimate.
struct MixingProfile {
    MixingKind kind = MixingKind::alpha;
    TauBound tau = TauBound::inf();
    std::variant<FiniteRangeDecay, PolynomialDecay, TableDecay> decay;

    double bound(long long m) const;
    std::string describe() const;
};

// Lattice points at sup-norm distance exactly m: (2m+1)^d - (2m-1)^d.
// Throws std::overflow_error if the value exceeds 64 bits.
unsigned long long shell_count(int d, long long m);

// psi(m) = sum_{j>m} j^d bound(j) shell_count(d,j). Exact for finite
// tails; truncated with a certified remainder < 1e-12 for power tails.
// Throws NonSummableError when the weighted tail diverges or the tail is
// undeclared.
double psi(const MixingProfile& profile, int d, long long m);

struct BlockingSequence {
    int d = 1;
    double b_n = 0.0;
    long long v_n = 0;
    long long m_n = 0;
    double tail = 0.0; // psi(m_n)
};

// v_n = [b^{-1/(2d)}], m_n = max{v_n, [(psi(v_n)/b)^{1/d}] + 1}.
// Requires 0 < b < 1 and a summable profile.
BlockingSequence blocking_sequence(const MixingProfile& profile, int d, double b_n);

struct Lemma1Row {
    double b = 0.0;
    long long v_n = 0;
    long long m_n = 0;
    double m_d_b = 0.0;      // m_n^d * b
    double tail_ratio = 0.0; // psi(m_n) / (m_n^d * b)
};

struct Lemma1Diagnostic {
    std::vector<Lemma1Row> rows;
    // Monotone-trend flags over the schedule (non-strict, expected
    // directions); limits themselves are not finitely checkable.
    bool m_n_nondecreasing = false;
    bool m_d_b_nonincreasing = false;
    bool tail_ratio_nonincreasing = false;
};

// Per-b diagnostics of the blocking sequence over a strictly decreasing
// bin-width schedule in (0,1).
Lemma1Diagnostic lemma1_diagnostic(const MixingProfile& profile, int d,
                                   const std::vector<double>& b_schedule);

// Which summability condition to certify. The *_i conditions weight an
// alpha profile by m^{2d-1}; the *_ii conditions weight a rho profile by
// m^{d-1}. prop1_* accepts any tau >= 1, thm1_* requires tau = infinity.
enum class TheoremCondition { prop1_i, prop1_ii, thm1_i, thm1_ii };

TheoremCondition theorem_condition_from_string(const std::string& s);
std::string to_string(TheoremCondition c);

struct HypothesisCertificate {
    bool satisfied = false;
    double sum = 0.0;   // value of the weighted series when it converges
    std::string detail; // closed-form reasoning or the divergence witness
};

// Proof-carrying convergence check of the weighted series for the given
// condition. Throws std::invalid_argument when the profile kind or tau
// does not match the condition, NonSummableError for undeclared tails.
HypothesisCertificate hypothesis_check(const MixingProfile& profile, int d,
                                       TheoremCondition condition);

} // namespace fpoly
