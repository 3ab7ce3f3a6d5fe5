#include "kbeam/bisection.hpp"

#include <cmath>
#include <string>

#include "kbeam/errors.hpp"

namespace kbeam {

BisectionResult bisect(const std::function<double(double)>& phi, double lo, double hi,
                       const BisectionOptions& options) {
    if (!(options.tol > 0.0)) throw ConfigError("bisection tolerance must be positive");
    BisectionResult out;
    while (hi - lo > options.tol && out.bisections < options.max_bisections) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // bracket at floating-point resolution
        if (phi(mid) <= 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
        ++out.bisections;
    }
    out.lo = lo;
    out.hi = hi;
    out.root = 0.5 * (lo + hi);
    out.value_at_root = phi(out.root);
    return out;
}

BisectionResult bisect_with_doubling(const std::function<double(double)>& phi, double lo,
                                     double upper, const BisectionOptions& options) {
    if (!(upper > lo)) throw ConfigError("initial upper bracket must exceed the lower end");
    std::size_t doublings = 0;
    double hi = upper;
    while (!(phi(hi) > 0.0)) {
        if (doublings == options.max_doublings) {
            throw ConvergenceFailure("no sign change found below R = " + std::to_string(hi));
        }
        lo = hi;
        hi *= 2.0;
        ++doublings;
    }
    BisectionResult out = bisect(phi, lo, hi, options);
    out.doublings = doublings;
    return out;
}

bool leftmost_sign_change(const std::function<double(double)>& phi, const std::vector<double>& probes,
                          double& lo, double& hi) {
    if (probes.size() < 2) return false;
    double prev = phi(probes.front());
    for (std::size_t k = 1; k < probes.size(); ++k) {
        const double cur = phi(probes[k]);
        if (prev <= 0.0 && cur > 0.0) {
            lo = probes[k - 1];
            hi = probes[k];
            return true;
        }
        prev = cur;
    }
    return false;
}

std::vector<double> log_probe(double upper, std::size_t count) {
    std::vector<double> p;
    if (count == 0) return p;
    p.push_back(0.0);
    if (count == 1) return p;
    const std::size_t m = count - 1;
    for (std::size_t k = 0; k < m; ++k) {
        const double frac = m == 1 ? 1.0 : static_cast<double>(k) / static_cast<double>(m - 1);
        p.push_back(upper * std::pow(10.0, -12.0 * (1.0 - frac)));
    }
    p.back() = upper;
    return p;
}

}  // namespace kbeam
