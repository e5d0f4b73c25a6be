#include "hsurf/wp_volumes.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

namespace hsurf {

namespace {

constexpr double kFourPiSq = 39.47841760435743;  // 4 pi^2

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

double log_add(double a, double b) {
    if (a == -INFINITY) return b;
    if (b == -INFINITY) return a;
    double hi = std::max(a, b), lo = std::min(a, b);
    return hi + std::log1p(std::exp(lo - hi));
}

// Monomial symmetric sum: assigns each exponent group to distinct variables.
double msym(const std::vector<std::pair<int, int>>& groups, size_t gi, int start, int left,
            std::vector<char>& used, const std::vector<double>& x2) {
    if (left == 0) {
        if (gi + 1 == groups.size()) return 1.0;
        return msym(groups, gi + 1, 0, groups[gi + 1].second, used, x2);
    }
    double acc = 0;
    for (int i = start; i < (int)x2.size(); ++i) {
        if (used[i]) continue;
        used[i] = 1;
        acc += std::pow(x2[i], groups[gi].first) *
               msym(groups, gi, i + 1, left - 1, used, x2);
        used[i] = 0;
    }
    return acc;
}

} // namespace

double VolumeTable::log_value(int g, int n) const {
    auto it = log_values.find({g, n});
    if (it == log_values.end()) {
        std::ostringstream msg;
        msg << "volume table has no entry for genus " << g << " with " << n << " boundaries";
        throw ConfigError(msg.str());
    }
    return it->second;
}

VolumeTable load_volume_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open volume table: " + path);
    VolumeTable t;
    std::string line;
    int line_no = 0;
    auto fail = [&](const std::string& why) {
        std::ostringstream msg;
        msg << path << ":" << line_no << ": " << why;
        throw ConfigError(msg.str());
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (line[0] == '#') {
            auto pos = line.find("convention=");
            if (pos != std::string::npos) t.convention = line.substr(pos + 11);
            continue;
        }
        if (line == "g,n,value_log") continue;
        auto fields = split(line, ',');
        try {
            if (fields[0] == "poly") {
                if (fields.size() != 4) fail("poly row needs 4 fields");
                int g = std::stoi(fields[1]), n = std::stoi(fields[2]);
                std::vector<PolyTerm> terms;
                for (const auto& tok : split(fields[3], ';')) {
                    auto parts = split(tok, ':');
                    if (parts.size() != 2) fail("bad polynomial term '" + tok + "'");
                    PolyTerm term;
                    if (!parts[0].empty())
                        for (const auto& e : split(parts[0], '.'))
                            term.sig.push_back(std::stoi(e));
                    std::sort(term.sig.rbegin(), term.sig.rend());
                    term.coeff = std::stod(parts[1]);
                    if (!std::isfinite(term.coeff)) fail("non-finite coefficient");
                    terms.push_back(std::move(term));
                }
                t.polynomials[{g, n}] = std::move(terms);
            } else {
                if (fields.size() != 3) fail("scalar row needs 3 fields");
                int g = std::stoi(fields[0]), n = std::stoi(fields[1]);
                if (2 * g - 2 + n <= 0) fail("non-hyperbolic (g,n) pair");
                double lv = std::stod(fields[2]);
                if (!std::isfinite(lv)) fail("non-finite log volume");
                t.log_values[{g, n}] = lv;
                if (n == 0) t.max_genus = std::max(t.max_genus, g);
            }
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            fail(std::string("parse failure: ") + e.what());
        }
    }
    // Each polynomial's constant term must reproduce the scalar row.
    for (const auto& [key, terms] : t.polynomials) {
        auto it = t.log_values.find(key);
        if (it == t.log_values.end()) {
            std::ostringstream msg;
            msg << "polynomial for (" << key.first << "," << key.second << ") has no scalar row";
            throw ConfigError(msg.str());
        }
        double c0 = 0;
        for (const auto& term : terms)
            if (term.sig.empty()) c0 = term.coeff;
        double v = std::exp(it->second);
        if (std::abs(c0 - v) > 1e-9 * v) {
            std::ostringstream msg;
            msg << "polynomial constant term " << c0 << " disagrees with scalar volume " << v;
            throw ConfigError(msg.str());
        }
    }
    if (t.log_values.empty()) throw ConfigError(path + ": no volume rows");
    return t;
}

double evaluate_polynomial(const VolumeTable& t, int g, int n, const std::vector<double>& L) {
    auto it = t.polynomials.find({g, n});
    if (it == t.polynomials.end()) {
        std::ostringstream msg;
        msg << "no stored polynomial for genus " << g << " with " << n << " boundaries";
        throw ConfigError(msg.str());
    }
    if ((int)L.size() != n)
        throw PreconditionError("boundary length vector size must equal n");
    std::vector<double> x2(L.size());
    for (size_t i = 0; i < L.size(); ++i) x2[i] = L[i] * L[i];
    double acc = 0;
    for (const auto& term : it->second) {
        if (term.sig.empty()) {
            acc += term.coeff;
            continue;
        }
        if ((int)term.sig.size() > n) continue;
        std::vector<std::pair<int, int>> groups;  // (exponent, multiplicity)
        for (int e : term.sig) {
            if (!groups.empty() && groups.back().first == e)
                ++groups.back().second;
            else
                groups.push_back({e, 1});
        }
        std::vector<char> used(L.size(), 0);
        acc += term.coeff * msym(groups, 0, 0, groups[0].second, used, x2);
    }
    return acc;
}

InequalityCheck boundary_length_estimate(const VolumeTable& t, int g, int n,
                                         const std::vector<double>& L) {
    std::vector<double> twoL(L.size());
    double abssum = 0;
    for (size_t i = 0; i < L.size(); ++i) {
        twoL[i] = 2.0 * L[i];
        abssum += std::abs(L[i]);
    }
    InequalityCheck c;
    c.lhs = evaluate_polynomial(t, g, n, twoL);
    c.rhs = std::exp(abssum + t.log_value(g, n));
    c.holds = c.lhs <= c.rhs * (1.0 + 1e-12);
    return c;
}

double volume_relation_check(const VolumeTable& t, int g, int n, int i) {
    if (i < 0 || 2 * i > n) throw PreconditionError("need 0 <= 2i <= n");
    return std::exp(t.log_value(g, n) - t.log_value(g + i, n - 2 * i));
}

double mz_asymptotic_log(int g, int n, double C) {
    if (g < 1 || n < 0 || 2 * g - 3 + n < 0)
        throw PreconditionError("factorial asymptotic needs g >= 1 and 2g-3+n >= 0");
    if (C <= 0) return -INFINITY;
    return std::log(C) - 0.5 * std::log((double)g) + std::lgamma(2.0 * g - 2.0 + n) +
           (2.0 * g - 3.0 + n) * std::log(kFourPiSq);
}

double mz_asymptotic(int g, int n, double C) { return std::exp(mz_asymptotic_log(g, n, C)); }

double mz_ratio_log(const VolumeTable& t, int g) {
    return t.log_value(g, 0) - mz_asymptotic_log(g, 0, 1.0);
}

std::pair<double, double> fit_universal_constant(VolumeTable& t) {
    if (t.max_genus < 3) throw ConfigError("volume table too small to fit the asymptotic");
    const int g_lo = std::max(2, (t.max_genus + 2) / 2);
    std::vector<double> logs;
    for (int g = g_lo; g <= t.max_genus; ++g)
        if (t.has(g, 0)) logs.push_back(mz_ratio_log(t, g));
    if (logs.size() < 2) throw ConfigError("too few closed-surface rows in the fit range");
    double mean = 0;
    for (double v : logs) mean += v;
    mean /= logs.size();
    double dev = 0;
    for (double v : logs) dev = std::max(dev, std::abs(std::expm1(v - mean)));
    t.fitted_C = std::exp(mean);
    t.fit_max_rel_dev = dev;
    return {t.fitted_C, dev};
}

std::vector<std::vector<int>> admissible_genus_tuples(int g, int k, int q,
                                                      const std::vector<int>& n_parts) {
    if ((int)n_parts.size() != q) throw PreconditionError("partition size must equal q");
    std::vector<std::vector<int>> out;
    const int total = g + q - 1 - k;
    if (total < 0 || q < 1) return out;
    std::vector<int> cur(q, 0);
    // Depth-first distribution with the per-part admissibility floor.
    std::function<void(int, int)> rec = [&](int idx, int rest) {
        const int lo = std::max(0, (int)std::ceil((3.0 - n_parts[idx]) / 2.0));
        if (idx + 1 == q) {
            if (rest >= lo) {
                cur[idx] = rest;
                out.push_back(cur);
            }
            return;
        }
        for (int v = lo; v <= rest; ++v) {
            cur[idx] = v;
            rec(idx + 1, rest - v);
        }
    };
    rec(0, total);
    return out;
}

SumVolumeProduct sum_volume_product(const VolumeTable& t, int g, int k, int q,
                                    const std::vector<int>& n_parts, double D) {
    if (!(D > 0)) throw PreconditionError("envelope constant D must be positive");
    if (q < 2 || q > k + 1) throw PreconditionError("need 2 <= q <= k+1");
    int n_sum = 0;
    for (int n : n_parts) n_sum += n;
    if (n_sum != 2 * k) throw PreconditionError("boundary counts must sum to 2k");
    SumVolumeProduct out;
    double lse = -INFINITY;
    for (const auto& tuple : admissible_genus_tuples(g, k, q, n_parts)) {
        double s = 0;
        for (int i = 0; i < q; ++i) {
            if (t.has(tuple[i], n_parts[i])) {
                s += t.log_value(tuple[i], n_parts[i]);
            } else {
                s += mz_asymptotic_log(std::max(1, tuple[i]), n_parts[i],
                                       t.fitted_C > 0 ? t.fitted_C : 1.0);
                out.used_asymptotic = true;
            }
        }
        lse = log_add(lse, s);
        out.empty = false;
    }
    out.log_sum = lse;
    out.log_envelope = t.log_value(g, 0) + k * std::log(D) + 0.5 * std::log((double)k) -
                       0.5 * (q - 1) * std::log((double)g);
    return out;
}

double fit_sum_volume_constant(VolumeTable& t, int k_max) {
    double D = 1.0;
    for (int g = 3; g <= t.max_genus; ++g) {
        if (!t.has(g, 0)) continue;
        for (int k = 1; k <= k_max; ++k) {
            auto s = sum_volume_product(t, g, k, 2, {k, k}, 1.0);
            if (s.empty || s.used_asymptotic) continue;
            // envelope with D=1 gives log(sqrt(k) V_g / sqrt(g)); need
            // D^k >= sum / that.
            double need = (s.log_sum - s.log_envelope) / k;
            D = std::max(D, std::exp(need));
        }
    }
    t.fitted_D = D;
    return D;
}

} // namespace hsurf
