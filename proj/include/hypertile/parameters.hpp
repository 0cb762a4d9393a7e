#pragma once

#include <algorithm>
#include <optional>
#include <ostream>
#include <vector>

#include "hypertile/errors.hpp"
#include "hypertile/rational.hpp"

namespace hypertile {

inline void check_kt(int k, int t) {
    if (!(3 <= k && k < t)) throw precondition_error("need 3 <= k < t");
}

// beta(k,t,l) = 2 / (C(t,k-1) + C(t-l-1,k-1) + C(l+1,k-1))
inline Rational beta_ltl(int k, int t, int l) {
    check_kt(k, t);
    if (l < 0 || l > t - 1) throw precondition_error("need 0 <= l <= t-1");
    BigInt den = binomial_exact(t, k - 1) + binomial_exact(t - l - 1, k - 1) +
                 binomial_exact(l + 1, k - 1);
    return Rational(BigInt(2), den);
}

// The three qualifying conditions for l0(k,t). The third one,
// beta <= 1/(2*C(2l+1,k-1)), applies only when 2(l+1) < t: enforced at the
// 2(l+1) = t boundary it would reject (k,t,l) = (5,6,2) and break the
// k=5 coefficient 13/15.
inline bool l0_conditions_hold(int k, int t, int l) {
    if (2 * (l + 1) > t) return false;
    Rational b = beta_ltl(k, t, l);
    BigInt den2 = binomial_exact(t - 1, k - 1) + binomial_exact(l, k - 1);
    if (b > Rational(BigInt(1), den2)) return false;
    BigInt c3 = binomial_exact(2 * l + 1, k - 1);
    if (c3 > 0 && 2 * (l + 1) < t) {
        if (b > Rational(BigInt(1), 2 * c3)) return false;
    }
    return true;
}

// l0(3,t) = 1; for k >= 4 the largest l satisfying the conditions above.
inline int l0(int k, int t) {
    check_kt(k, t);
    if (k == 3) return 1;
    int best = -1;
    for (int l = 0; l <= t - 1; ++l)
        if (l0_conditions_hold(k, t, l)) best = l;
    if (best < 0) throw precondition_error("no qualifying l for l0");
    return best;
}

inline Rational beta(int k, int t) { return beta_ltl(k, t, l0(k, t)); }

// d(k,t) = 1 - C(t-1,k-1) * beta(k,t)
inline Rational d_param(int k, int t) {
    return Rational(1) - Rational(binomial_exact(t - 1, k - 1)) * beta(k, t);
}

// w(0) = w(1) = 0, w(j+1) - w(j) = 1 - (t-j+1)!/(t+1)!
inline Rational weight_w(int t, int j) {
    if (t < 1 || t > 20) throw precondition_error("t outside 1..20");
    if (j < 0 || j > t) throw precondition_error("need 0 <= j <= t");
    Rational w = 0;
    const BigInt tp1 = factorial_exact(t + 1);
    for (int jj = 0; jj < j; ++jj)
        w += Rational(1) - Rational(factorial_exact(t - jj + 1), tp1);
    return w;
}

struct ThresholdRow {
    int k = 0;
    int t = 0;
    int l0 = 0;
    Rational beta;
    Rational d;
    // 1 - min{beta(k,t), (t-1)/(t*C(t-1,k-1))}
    Rational codegree_coefficient;
    // 1 - (k + 1_{k odd})/(2k^2), the t = k+1 parity-route value
    std::optional<Rational> successor_coefficient;
    // Best (smallest) of the applicable coefficients; the table value.
    Rational coefficient;
};

// Rows for k = 3..k_max with t = k + t_offset.
inline std::vector<ThresholdRow> threshold_table(int k_max, int t_offset = 1) {
    if (k_max < 3) throw precondition_error("k_max must be >= 3");
    if (t_offset < 1) throw precondition_error("t_offset must be >= 1");
    std::vector<ThresholdRow> rows;
    for (int k = 3; k <= k_max; ++k) {
        const int t = k + t_offset;
        ThresholdRow row;
        row.k = k;
        row.t = t;
        row.l0 = l0(k, t);
        row.beta = beta_ltl(k, t, row.l0);
        row.d = Rational(1) - Rational(binomial_exact(t - 1, k - 1)) * row.beta;
        Rational step3 = Rational(BigInt(t - 1), BigInt(t) * binomial_exact(t - 1, k - 1));
        row.codegree_coefficient = Rational(1) - std::min(row.beta, step3);
        row.coefficient = row.codegree_coefficient;
        if (t == k + 1) {
            Rational c13 = Rational(1) - Rational(BigInt(k + (k % 2)), BigInt(2) * k * k);
            row.successor_coefficient = c13;
            row.coefficient = std::min(row.coefficient, c13);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline void write_threshold_csv(const std::vector<ThresholdRow>& rows, std::ostream& out) {
    out << "k,t,l0,beta_num,beta_den,d_num,d_den,coefficient_num,coefficient_den\n";
    for (const auto& r : rows) {
        out << r.k << ',' << r.t << ',' << r.l0 << ',' << numerator(r.beta) << ','
            << denominator(r.beta) << ',' << numerator(r.d) << ',' << denominator(r.d) << ','
            << numerator(r.coefficient) << ',' << denominator(r.coefficient) << '\n';
    }
}

} // namespace hypertile
