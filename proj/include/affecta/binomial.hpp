#pragma once

namespace affecta {

/// P(X ≥ k) for X ~ Binomial(n, p), summed term by term in log space.
double binomial_tail(int k, int n, double p);

/// P(X < k), the complement of binomial_tail.
double binomial_tail_strictly_less(int k, int n, double p);

/// Continuity-corrected normal approximation of P(X ≥ k): 1 − Φ((k − ½ − np)/√(np(1−p))).
/// This is what common online binomial calculators report for large n.
double binomial_tail_normal_approx(int k, int n, double p);

}  // namespace affecta
