#pragma once

namespace kinchem {

/// Saturating taxis sensitivity alpha(S) = chi*S/(1+S).
/// Bounded by chi and globally Lipschitz with constant chi on S >= 0.
struct TaxisFunction {
    double chi = 1.0;

    double alpha_inf() const { return chi; }
    double lipschitz() const { return chi; }

    /// Evaluate alpha(S). Throws std::domain_error for S < 0: densities are
    /// nonnegative, so a negative argument signals an upstream solver failure.
    double operator()(double S) const;
};

/// Model rate constants and the scaling parameter.
struct PhysParams {
    double mu0 = 1.0;   // stiff relaxation rate
    double mu1 = 1.0;   // isotropic turning rate
    double mu2 = 1.0;   // taxis turning rate
    double sigma = 1.0; // chemoattractant turning rate
    double a = 1.0;     // chemoattractant production
    double b = 1.0;     // chemoattractant decay
    double eps = 0.1;   // scaling parameter, > 0
    TaxisFunction taxis{};

    /// Rates must be nonnegative and eps strictly positive.
    /// Throws std::invalid_argument otherwise.
    void validate() const;
};

} // namespace kinchem
