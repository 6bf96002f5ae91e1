//! Isotropic elastic background medium.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Lamé parameters, density and angular frequency of the exterior solid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ElasticMedium {
    pub lambda: f64,
    pub mu: f64,
    pub rho: f64,
    pub omega: f64,
}

impl ElasticMedium {
    /// Builds a medium, rejecting parameter sets for which the Navier
    /// operator is not strongly elliptic or the frequency is not positive.
    pub fn new(lambda: f64, mu: f64, rho: f64, omega: f64) -> Result<Self> {
        let medium = Self { lambda, mu, rho, omega };
        medium.validate()?;
        Ok(medium)
    }

    /// The default material used throughout the numerical examples
    /// (`lambda = 2`, `mu = 1`, `rho = 1`), at the given frequency.
    pub fn reference(omega: f64) -> Result<Self> {
        Self::new(2.0, 1.0, 1.0, omega)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.lambda, self.mu, self.rho, self.omega]
            .iter()
            .all(|v| v.is_finite());
        if !finite {
            return Err(Error::InvalidMedium("non-finite parameter".into()));
        }
        if self.mu <= 0.0 {
            return Err(Error::InvalidMedium(format!("mu = {} must be > 0", self.mu)));
        }
        if self.lambda + self.mu <= 0.0 {
            return Err(Error::InvalidMedium(format!(
                "lambda + mu = {} must be > 0",
                self.lambda + self.mu
            )));
        }
        if self.rho <= 0.0 {
            return Err(Error::InvalidMedium(format!("rho = {} must be > 0", self.rho)));
        }
        if self.omega <= 0.0 {
            return Err(Error::InvalidMedium(format!("omega = {} must be > 0", self.omega)));
        }
        Ok(())
    }

    /// Compressional wavenumber `omega * sqrt(rho / (lambda + 2 mu))`.
    pub fn kp(&self) -> f64 {
        self.omega * (self.rho / (self.lambda + 2.0 * self.mu)).sqrt()
    }

    /// Shear wavenumber `omega * sqrt(rho / mu)`.
    pub fn ks(&self) -> f64 {
        self.omega * (self.rho / self.mu).sqrt()
    }

    /// `rho * omega^2`, the inertia factor that scales the gradient part
    /// of the fundamental tensor.
    pub fn rho_omega2(&self) -> f64 {
        self.rho * self.omega * self.omega
    }

    pub fn with_omega(&self, omega: f64) -> Result<Self> {
        Self::new(self.lambda, self.mu, self.rho, omega)
    }
}

/// Returns `(k_p, k_s)` for a validated medium.
pub fn medium_wavenumbers(medium: &ElasticMedium) -> Result<(f64, f64)> {
    medium.validate()?;
    Ok((medium.kp(), medium.ks()))
}
