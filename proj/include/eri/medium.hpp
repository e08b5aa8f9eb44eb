#ifndef ERI_MEDIUM_HPP
#define ERI_MEDIUM_HPP

#include <cmath>
#include <stdexcept>

namespace eri {

// Isotropic elastic medium: Lame constants and angular frequency, with the
// derived compressional and shear wavenumbers.
struct ElasticMedium {
  double mu;
  double lambda;
  double omega;
  double kp;  // omega / sqrt(2 mu + lambda)
  double ks;  // omega / sqrt(mu)

  ElasticMedium(double mu_, double lambda_, double omega_)
      : mu(mu_), lambda(lambda_), omega(omega_) {
    if (!(mu > 0.0)) throw std::domain_error("ElasticMedium: mu must be positive");
    if (!(lambda + mu >= 0.0))
      throw std::domain_error("ElasticMedium: lambda + mu must be nonnegative");
    if (!(omega > 0.0)) throw std::domain_error("ElasticMedium: omega must be positive");
    kp = omega / std::sqrt(2.0 * mu + lambda);
    ks = omega / std::sqrt(mu);
  }

  double shear_wavelength() const { return 2.0 * M_PI / ks; }
};

// Generalized (pseudo-) stress coefficients; mu_t + lambda_t must equal
// mu + lambda of the owning medium.
struct GeneralizedStressParams {
  double mu_t;
  double lambda_t;

  GeneralizedStressParams(const ElasticMedium& medium, double mu_t_, double lambda_t_)
      : mu_t(mu_t_), lambda_t(lambda_t_) {
    if (mu_t + lambda_t != medium.mu + medium.lambda)
      throw std::domain_error(
          "GeneralizedStressParams: mu_t + lambda_t must equal mu + lambda");
  }

  // Kupradze pseudo-stress pair; keeps the double-layer kernel weakly singular.
  static GeneralizedStressParams pseudo_stress(const ElasticMedium& m) {
    const double denom = 3.0 * m.mu + m.lambda;
    double mu_t = m.mu * (m.mu + m.lambda) / denom;
    // enforce the constraint exactly in floating point
    double lambda_t = (m.mu + m.lambda) - mu_t;
    return GeneralizedStressParams(m, mu_t, lambda_t);
  }
};

}  // namespace eri

#endif
