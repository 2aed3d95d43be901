#pragma once

// Arithmetic functions and the divisor-weighted sums that bound the second
// moment of S(h), together with the closed-form error envelopes.
//
// All envelopes carry a free constant C and slack epsilon (EnvelopeParams);
// logarithms are natural.

#include <cstdint>
#include <optional>
#include <vector>

#include "plattice/counting.hpp"

namespace plattice {

struct EnvelopeParams {
  double epsilon = 0.05;
  double C = 1.0;

  /// Throws std::invalid_argument unless epsilon > 0 and C > 0.
  void validate() const;
};

/// q = a / (2 alpha), H = floor(2 sqrt(a) b / (a + b)), Delta = max(b^2 sqrt(a) / (a + b), 3).
struct ProofParameters {
  Rat q;
  std::int64_t H;
  double Delta;
};

/// Computed exactly: H is the largest integer with H^2 (a + b)^2 <= 4 a b^2.
std::int64_t paper_H(const Rat &a, const Rat &b);
ProofParameters proof_parameters(const CountingInstance &inst);

/// True when b^2 <= a, where the trivial bound |E| <= b/2 already suffices.
bool trivial_regime(const CountingInstance &inst);

std::uint64_t sigma(std::uint64_t j);
std::uint64_t num_divisors(std::uint64_t j);
/// sum of divisors h of j with h < b. Throws std::invalid_argument when j < 1.
std::uint64_t g_trunc(std::uint64_t j, const Rat &b);

/// Smallest-prime-factor sieve on [1, limit] for batch divisor queries.
class DivisorTable {
public:
  explicit DivisorTable(std::uint64_t limit);

  std::uint64_t limit() const { return limit_; }
  std::uint64_t sigma(std::uint64_t j) const;
  std::uint64_t num_divisors(std::uint64_t j) const;
  /// All divisors of j, unsorted.
  std::vector<std::uint64_t> divisors(std::uint64_t j) const;
  std::uint64_t g_trunc(std::uint64_t j, const Rat &b) const;

private:
  void check(std::uint64_t j) const;

  std::uint64_t limit_;
  std::vector<std::uint32_t> spf_;
};

/// f(j) = exp((1 + eps) ln 2 log j / log log j). Throws std::invalid_argument when j < 3.
double divisor_envelope_f(double j, double epsilon);

/// min(2b, ||2 alpha j / a||^{-1}), where ||.|| = 0 selects 2b.
double resonance_weight(const CountingInstance &inst, std::int64_t j);

/// I = sum_{1 <= j < bH} min(2b, ||2 alpha j / a||^{-1}) g(j) / j.
double I_sum(const CountingInstance &inst, std::int64_t H);
/// I_1 = sum_{1 <= j < b} min(2b, ||2 alpha j / a||^{-1}).
double I1_sum(const CountingInstance &inst);
/// I_2 = sum_{b <= j < bH} min(2b, ||2 alpha j / a||^{-1}) / j.
double I2_sum(const CountingInstance &inst, std::int64_t H);

/// (log log b) I_1 + b f(bH) I_2, the majorant of I up to a constant.
/// log log b uses max(b, 3) and f(bH) uses max(bH, 3).
double I_majorant(const CountingInstance &inst, std::int64_t H, double epsilon);

/// sum_{h <= H} (1/h) sum_{1 <= l < N} min(2b, ||2 alpha h l / a||^{-1}), N = floor(b).
double shift_double_sum(const CountingInstance &inst, std::int64_t H);
/// The same sum regrouped by j = h l: sum_j min(...) sum_{h | j, h <= H, j/h < N} 1/h.
double shift_double_sum_grouped(const CountingInstance &inst, std::int64_t H);
/// sum_{h <= H} N/h + I: an upper bound for sum_{h <= H} |S(h)|^2 / h.
double second_moment_majorant(const CountingInstance &inst, std::int64_t H);

/// C (sqrt a + b / sqrt a) exp((ln 2 / 2 + eps) log Delta / log log Delta).
double theorem1_envelope(const CountingInstance &inst, const EnvelopeParams &p);
double theorem1_envelope(double a, double b, const EnvelopeParams &p);

/// C a^{1/2} exp((3/4 ln 2 + eps) log a / log log a). Throws for a < 16.
double popov_envelope(double a, const EnvelopeParams &p);
/// C (a^{1/2} log a + b a^{-1/2} exp((2 + eps)(log a)^{1/2} / log log a)). Throws for a < 16.
double huangli_envelope(double a, double b, const EnvelopeParams &p);
/// C a^{1/2} exp((sqrt 2 - eps)(log a)^{1/2} / log log a). Throws for a < 16 or eps >= sqrt 2.
double chamizo_pastor_floor(double a, const EnvelopeParams &p);

/// Scans integer a in [16, a_max] with b = a and returns the smallest a0 such
/// that huangli_envelope < popov_envelope for every integer a in [a0, a_max];
/// nullopt when the ordering fails at a_max itself.
std::optional<std::int64_t> envelope_crossover(std::int64_t a_max, const EnvelopeParams &p);

} // namespace plattice
