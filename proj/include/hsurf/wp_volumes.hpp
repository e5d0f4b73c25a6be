#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hsurf/errors.hpp"

namespace hsurf {

// One symmetric block of a volume polynomial: coeff multiplies every monomial
// whose multiset of nonzero exponents in the squared boundary lengths is sig.
struct PolyTerm {
    std::vector<int> sig;  // descending, nonzero
    double coeff = 0;
};

// Table of Weil-Petersson volumes V_{g,n}: log values at zero boundary
// length for every stored (g,n), and full boundary-length polynomials for
// the small ones.  Fitted constants are recorded by the fit routines below.
struct VolumeTable {
    std::map<std::pair<int, int>, double> log_values;
    std::map<std::pair<int, int>, std::vector<PolyTerm>> polynomials;
    std::string convention;
    int max_genus = 0;
    double fitted_C = 0;
    double fit_max_rel_dev = 0;
    double fitted_D = 0;

    bool has(int g, int n) const { return log_values.count({g, n}) > 0; }
    double log_value(int g, int n) const;  // ConfigError when missing
};

VolumeTable load_volume_table(const std::string& path);

// Evaluates the stored polynomial at boundary lengths L (L.size() == n).
double evaluate_polynomial(const VolumeTable& t, int g, int n, const std::vector<double>& L);

struct InequalityCheck {
    double lhs = 0;
    double rhs = 0;
    bool holds = false;
};

// Boundary-length estimate: V_{g,n}(2L) <= e^{sum|L_i|} V_{g,n}(0).
InequalityCheck boundary_length_estimate(const VolumeTable& t, int g, int n,
                                         const std::vector<double>& L);

// Ratio V_{g,n} / V_{g+i,n-2i}: adding handles at the cost of boundary pairs
// never shrinks the volume by more than a modest constant.
double volume_relation_check(const VolumeTable& t, int g, int n, int i);

// C * g^{-1/2} * (2g-3+n)! * (4 pi^2)^{2g-3+n}, in log and linear form.
double mz_asymptotic_log(int g, int n, double C);
double mz_asymptotic(int g, int n, double C);

// log(V_{g,0} sqrt(g) / ((2g-3)! (4 pi^2)^{2g-3})): flattens as g grows.
double mz_ratio_log(const VolumeTable& t, int g);

// Fits the universal constant of the factorial asymptotic over the
// largest-genus half of the closed-surface rows; records (C, max relative
// deviation) in the table and returns them.
std::pair<double, double> fit_universal_constant(VolumeTable& t);

// All (g_1..g_q) >= 0 with sum g + q - 1 - k and 2 g_i - 3 + n_i >= 0.
std::vector<std::vector<int>> admissible_genus_tuples(int g, int k, int q,
                                                      const std::vector<int>& n_parts);

struct SumVolumeProduct {
    double log_sum = 0;       // log sum over tuples of prod_i V_{g_i,n_i}
    bool empty = true;
    bool used_asymptotic = false;
    double log_envelope = 0;  // log( D^k sqrt(k) V_{g,0} / g^{(q-1)/2} )
};

// Sum of volume products over admissible genus tuples against the envelope
// D^k sqrt(k) V_g g^{-(q-1)/2}; missing entries fall back to the factorial
// asymptotic with the fitted constant and raise the flag.
SumVolumeProduct sum_volume_product(const VolumeTable& t, int g, int k, int q,
                                    const std::vector<int>& n_parts, double D);

// Smallest D making the envelope hold across the table for two-piece
// splittings with k up to k_max; records it in the table and returns it.
double fit_sum_volume_constant(VolumeTable& t, int k_max = 3);

} // namespace hsurf
