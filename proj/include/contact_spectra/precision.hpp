#ifndef CONTACT_SPECTRA_PRECISION_HPP
#define CONTACT_SPECTRA_PRECISION_HPP

#include <stdexcept>

namespace contact_spectra {

/// Accuracy knobs shared by every series evaluation in the library.
struct PrecisionConfig {
    double target_abs_tol = 1e-12;
    int euler_maclaurin_terms = 12;
    double series_guard_factor = 10.0;

    void check() const {
        if (!(target_abs_tol > 0.0))
            throw std::invalid_argument("PrecisionConfig: target_abs_tol must be > 0");
        if (euler_maclaurin_terms < 2 || euler_maclaurin_terms > 30)
            throw std::invalid_argument("PrecisionConfig: euler_maclaurin_terms must be in [2, 30]");
        if (!(series_guard_factor >= 1.0))
            throw std::invalid_argument("PrecisionConfig: series_guard_factor must be >= 1");
    }
};

/// Thrown when a function is evaluated on its pole lattice. Kept distinct
/// from plain domain errors because several identities are deliberately
/// probed next to poles and callers need to tell the two cases apart.
struct pole_error : std::domain_error {
    using std::domain_error::domain_error;
};

/// Thrown when a certified truncation cannot reach the requested tolerance
/// within the term budget.
struct convergence_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace contact_spectra

#endif
