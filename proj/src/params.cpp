#include "kinchem/params.hpp"

#include <cmath>
#include <stdexcept>

namespace kinchem {

double TaxisFunction::operator()(double S) const {
    if (S < 0.0 || std::isnan(S)) {
        throw std::domain_error(
            "taxis sensitivity: negative attractant density (upstream solver failure)");
    }
    return chi * S / (1.0 + S);
}

void PhysParams::validate() const {
    // Zero rates are legitimate (they switch a term off); negatives are not.
    const bool rates_ok = mu0 >= 0.0 && mu1 >= 0.0 && mu2 >= 0.0 &&
                          sigma >= 0.0 && a >= 0.0 && b >= 0.0;
    if (!rates_ok) {
        throw std::invalid_argument("params: rate constants must be nonnegative");
    }
    if (!(eps > 0.0)) {
        throw std::invalid_argument("params: eps must be positive");
    }
    if (!(taxis.chi >= 0.0)) {
        throw std::invalid_argument("params: chi must be nonnegative");
    }
}

} // namespace kinchem
