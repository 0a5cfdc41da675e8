//! Epstein zeta function of a rectangular lattice, analytically continued
//! by Ewald splitting.
//!
//! `Z(s) = Σ'_{m ∈ Z^n} |m ∘ h|^{-s}`, continued to `s < n`. The lattice is
//! first rescaled to unit cell volume (`h̄ = V^{1/n}`), for which
//!
//! ```text
//! π^{-s/2} Γ(s/2) Z(s) = Σ'_x Γ(s/2, π|x|²) / (π|x|²)^{s/2}
//!                      + Σ'_g Γ((n−s)/2, π|g|²) / (π|g|²)^{(n−s)/2}
//!                      − 2/s − 2/(n−s)
//! ```
//!
//! with `g` ranging over the dual lattice, and `Z = h̄^{-s} Z_unit`.

use statrs::function::gamma::{gamma, gamma_ui};

/// Terms with `π|x|² > CUTOFF` are below double precision relative to the result.
const CUTOFF: f64 = 46.0;

fn lattice_sum(scale: &[f64], a: f64) -> f64 {
    let n = scale.len();
    let reach = (CUTOFF / std::f64::consts::PI).sqrt();
    let bounds: Vec<i64> = scale.iter().map(|s| (reach / s).ceil() as i64 + 1).collect();
    let mut m: Vec<i64> = bounds.iter().map(|b| -b).collect();
    let mut total = 0.0;
    loop {
        if m.iter().any(|&v| v != 0) {
            let r2: f64 = m.iter().zip(scale).map(|(&v, s)| (v as f64 * s).powi(2)).sum();
            let t = std::f64::consts::PI * r2;
            if t <= CUTOFF {
                total += gamma_ui(a, t) / t.powf(a);
            }
        }
        let mut k = n;
        loop {
            if k == 0 {
                return total;
            }
            k -= 1;
            if m[k] < bounds[k] {
                m[k] += 1;
                break;
            }
            m[k] = -bounds[k];
        }
    }
}

/// `Z(s)` for the lattice with per-axis spacings `h`, valid for `0 < s < n`.
pub fn epstein_zeta(h: &[f64], s: f64) -> f64 {
    let n = h.len() as f64;
    let volume: f64 = h.iter().product();
    let hbar = volume.powf(1.0 / n);
    let unit: Vec<f64> = h.iter().map(|x| x / hbar).collect();
    let dual: Vec<f64> = unit.iter().map(|x| 1.0 / x).collect();
    let bracket = lattice_sum(&unit, s / 2.0) + lattice_sum(&dual, (n - s) / 2.0)
        - 2.0 / s
        - 2.0 / (n - s);
    let z_unit = bracket * std::f64::consts::PI.powf(s / 2.0) / gamma(s / 2.0);
    z_unit * hbar.powf(-s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_madelung_type_constants() {
        // Z_{Z^3}(1) and Z_{Z^4}(2), the continued values at the kernel exponent.
        assert!((epstein_zeta(&[1.0; 3], 1.0) + 2.837_297_479_480_6).abs() < 1e-10);
        assert!((epstein_zeta(&[1.0; 4], 2.0) + 5.545_177_444_479_6).abs() < 1e-10);
    }

    #[test]
    fn homogeneity_in_spacing() {
        let a = epstein_zeta(&[0.5, 0.5, 0.5], 1.0);
        let b = epstein_zeta(&[1.0; 3], 1.0);
        assert!((a - 2.0 * b).abs() < 1e-10);
    }

    #[test]
    fn one_and_two_dimensional_closed_forms() {
        // Z_Z(s) = 2 ζ(s) and Z_{Z^2}(s) = 4 ζ(s/2) β(s/2).
        let zeta_half = -1.460_354_508_809_586_8;
        let beta_half = 0.667_691_457_189_609_2;
        assert!((epstein_zeta(&[1.0], 0.5) - 2.0 * zeta_half).abs() < 1e-10);
        assert!((epstein_zeta(&[1.0, 1.0], 1.0) - 4.0 * zeta_half * beta_half).abs() < 1e-10);
    }
}
