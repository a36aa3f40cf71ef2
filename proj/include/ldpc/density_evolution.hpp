#pragma once

#include <cmath>

#include "ldpc/degree_distribution.hpp"
#include "ldpc/errors.hpp"

namespace ldpc {

struct DeConfig {
    double tol = 1e-10;      // erased fraction counted as fully decoded
    int max_iter = 5000;
    double bisect_tol = 1e-6;
};

struct DeResult {
    bool success = false;
    double residual = 0.0; // final erased fraction
    int iters = 0;
};

/// Erased-fraction recursion over the BEC: P_0 = eps,
/// P_l = eps * lambda(1 - rho(1 - P_{l-1})). Success when P_l falls below
/// cfg.tol within the iteration cap. The sequence is non-increasing, so a
/// stalled value is a fixed point and the run can stop early.
inline DeResult de_iterate(const DegreeDistribution& dd, double epsilon, const DeConfig& cfg = {}) {
    if (epsilon < 0.0 || epsilon > 1.0) throw Error("erasure probability outside [0,1]");
    DeResult out;
    double p = epsilon;
    for (int l = 1; l <= cfg.max_iter; ++l) {
        out.iters = l;
        double next = epsilon * dd.lambda_eval(1.0 - dd.rho_eval(1.0 - p));
        if (next < cfg.tol) {
            out.success = true;
            out.residual = next;
            return out;
        }
        if (next >= p * (1.0 - 1e-15)) { // fixed point above tol
            out.residual = next;
            return out;
        }
        p = next;
    }
    out.residual = p;
    return out;
}

/// Decoding threshold: largest erasure probability for which the recursion
/// dies out, located by bisection (success region is a down-set in epsilon).
inline double decoding_threshold(const DegreeDistribution& dd, const DeConfig& cfg = {}) {
    double lo = 0.0, hi = 1.0;
    if (de_iterate(dd, hi, cfg).success) return hi;
    while (hi - lo > cfg.bisect_tol) {
        double mid = 0.5 * (lo + hi);
        if (de_iterate(dd, mid, cfg).success)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace ldpc
