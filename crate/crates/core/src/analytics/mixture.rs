use num_complex::Complex64;

use crate::error::{param, Result};

/// Characteristic function of a mixture selected by a complete group of
/// independent indicators: `Σ_k φ_k · P(z_k = 1)` with
/// `P(z_k = 1) = p_k ∏_{j<k}(1 − p_j)` and `P(z_n = 1) = ∏_{j<n}(1 − p_j)`.
///
/// `components` holds `φ₁ … φ_n`; `p` holds the `n − 1` indicator
/// probabilities.
pub fn mixture_charfn(p: &[f64], components: &[Complex64]) -> Result<Complex64> {
    if components.len() != p.len() + 1 {
        return Err(param(
            "components",
            "need exactly one more component than probabilities",
        ));
    }
    if p.iter().any(|x| !(0.0..=1.0).contains(x)) {
        return Err(param("p", "probabilities must lie in [0, 1]"));
    }
    let mut total = Complex64::new(0.0, 0.0);
    let mut none_before = 1.0;
    for (&pk, &phi) in p.iter().zip(components) {
        total += phi * (pk * none_before);
        none_before *= 1.0 - pk;
    }
    Ok(total + components[p.len()] * none_before)
}
