use serde::{Deserialize, Serialize};

use super::IsoError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstantVariant {
    /// `c = ω′ ω^{1/(n−1)} / (4^{n+3} ν ι e^{2n})`, for any graph with P(δ, ι, R₀).
    General,
    /// `c = ω^{1−1/ν₂} / (4^{ν₂+3} ν₂ e^{2ν₂})`, the noncommuting-graph form with
    /// `n = ν₂` and `ω′ = ι = 1`.
    GammaG,
}

/// Isoperimetric constant `c`.
///
/// `nu_val` is `ν_{R₀+1}` for [`ConstantVariant::General`] and `ν₂` for
/// [`ConstantVariant::GammaG`] (where `omega_prime`, `iota` and `n` only take
/// part in validation: `n` must still exceed 1).
pub fn constant_c(
    omega: f64,
    omega_prime: f64,
    nu_val: f64,
    iota: f64,
    n: f64,
    variant: ConstantVariant,
) -> Result<f64, IsoError> {
    if !(n > 1.0) {
        return Err(IsoError::DimensionTooSmall(n));
    }
    for (name, v) in [
        ("ω", omega),
        ("ω′", omega_prime),
        ("ν", nu_val),
        ("ι", iota),
    ] {
        if !(v.is_finite() && v > 0.0) {
            return Err(IsoError::InvalidParameter(format!(
                "{name} = {v} must be positive"
            )));
        }
    }
    Ok(match variant {
        ConstantVariant::General => {
            omega_prime * omega.powf(1.0 / (n - 1.0))
                / (4f64.powf(n + 3.0) * nu_val * iota * (2.0 * n).exp())
        }
        ConstantVariant::GammaG => {
            if !(nu_val > 1.0) {
                return Err(IsoError::DimensionTooSmall(nu_val));
            }
            omega.powf(1.0 - 1.0 / nu_val)
                / (4f64.powf(nu_val + 3.0) * nu_val * (2.0 * nu_val).exp())
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn general_unit_inputs() {
        let c = constant_c(1.0, 1.0, 1.0, 1.0, 2.0, ConstantVariant::General).unwrap();
        assert_relative_eq!(c, 1.0 / (4f64.powi(5) * 4f64.exp()), max_relative = 1e-15);
    }

    #[test]
    fn gamma_g_order_six() {
        let c = constant_c(3.0, 1.0, 3.0, 1.0, 3.0, ConstantVariant::GammaG).unwrap();
        let expected = 3f64.powf(2.0 / 3.0) / (4f64.powi(6) * 3.0 * 6f64.exp());
        assert_relative_eq!(c, expected, max_relative = 1e-15);
    }

    #[test]
    fn rejects_small_dimension() {
        assert_eq!(
            constant_c(1.0, 1.0, 1.0, 1.0, 1.0, ConstantVariant::General).unwrap_err(),
            IsoError::DimensionTooSmall(1.0)
        );
        assert!(constant_c(0.0, 1.0, 1.0, 1.0, 2.0, ConstantVariant::General).is_err());
    }
}
