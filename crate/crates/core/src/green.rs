//! Kähler scalar products and the Green–Kähler identity
//! `d(u,v)₁ = (u,∂v) + (v,∂u)`.

use crate::algebra::{basis_left_contract, basis_product, BasisIndex};
use crate::error::{Error, Result};
use crate::field::{difference, FormField};
use crate::grid::{inner_mask, trapezoid_weights, GridSpec, Region};

/// Both scalar products of a pair of fields.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarProductValue {
    /// `(ζu ∨ v)₀` at every node, the coefficient of `(u,v)` on `z`.
    pub zero_order: Vec<f64>,
    /// `(u,v)₁`, a grade `n−1` field.
    pub first_order: FormField,
}

fn check(u: &FormField, v: &FormField) -> Result<()> {
    if u.grid().compatible(v.grid()) {
        Ok(())
    } else {
        Err(Error::GridMismatch)
    }
}

/// `(u,v) = (ζu ∨ v)₀`, which for orthonormal differentials is `Σ_A u_A v_A`.
pub fn scalar_product_zero(u: &FormField, v: &FormField) -> Result<Vec<f64>> {
    check(u, v)?;
    let mut out = vec![0.0; u.grid().len()];
    for (a, ua) in u.components() {
        if let Some(va) = v.component(a) {
            for ((o, x), y) in out.iter_mut().zip(ua).zip(va) {
                *o += x * y;
            }
        }
    }
    Ok(out)
}

/// `s_i = (dx^i ∨ u, v)` for each axis.
fn flux_lattices(u: &FormField, v: &FormField) -> Vec<Vec<f64>> {
    let n = u.dim();
    (1..=n)
        .map(|i| {
            let mut s = vec![0.0; u.grid().len()];
            for (a, ua) in u.components() {
                let (b, sign) = basis_product(BasisIndex::axis(i), a);
                if let Some(vb) = v.component(b) {
                    for ((o, x), y) in s.iter_mut().zip(ua).zip(vb) {
                        *o += sign * x * y;
                    }
                }
            }
            s
        })
        .collect()
}

/// `(u,v)₁ = Σ_i dx^i · [(dx^i ∨ u, v) z]`.
pub fn scalar_product_one(u: &FormField, v: &FormField) -> Result<FormField> {
    check(u, v)?;
    let n = u.dim();
    let z = BasisIndex::full(n);
    let comps = flux_lattices(u, v).into_iter().enumerate().map(|(i, s)| {
        let (b, sign) = basis_left_contract(i + 1, z).expect("axis lies in z");
        (b, s.into_iter().map(|x| sign * x).collect::<Vec<_>>())
    });
    FormField::from_components(u.grid(), comps)
}

pub fn scalar_products(u: &FormField, v: &FormField) -> Result<ScalarProductValue> {
    Ok(ScalarProductValue {
        zero_order: scalar_product_zero(u, v)?,
        first_order: scalar_product_one(u, v)?,
    })
}

/// Residuals of the Green–Kähler identity on a region.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GreenResidual {
    /// `max |d(u,v)₁ − (u,∂v) − (v,∂u)|` over nodes off the region's faces.
    pub pointwise: f64,
    /// `|surface − volume|`.
    pub integrated: f64,
    /// `∮ (u,v)₁` over the region boundary, sampled so that it equals the
    /// weighted sum of the discrete `d(u,v)₁` exactly.
    pub surface: f64,
    /// Plain trapezoid `∮ (u,v)₁` over the boundary.
    pub surface_trapezoid: f64,
    /// `Σ_R d(u,v)₁ dV` with trapezoid weights.
    pub divergence: f64,
    /// `Σ_R [(u,∂v) + (v,∂u)] dV` with trapezoid weights.
    pub volume: f64,
}

impl GreenResidual {
    pub fn integrated_relative(&self) -> f64 {
        let s = self.surface.abs().max(self.volume.abs());
        if s > 0.0 {
            self.integrated / s
        } else {
            self.integrated
        }
    }
}

/// Outward flux `Σ_i ∮ s_i n_i dS` with trapezoid face weights. With
/// `stokes`, each face value is replaced by `(5s₀ − 2s₁ + s₂)/4` along the
/// inward line, which makes the flux equal the trapezoid sum of the
/// discrete divergence term by term.
fn surface_flux(grid: &GridSpec, s: &[Vec<f64>], stokes: bool) -> f64 {
    let shape = grid.shape();
    let strides = grid.strides();
    let h = grid.spacings();
    let n = grid.dim();
    let mut total = 0.0;
    for k in 0..grid.len() {
        let m = grid.multi_index(k);
        for i in 0..n {
            let (outward, step) = if m[i] == 0 {
                (-1.0, strides[i] as isize)
            } else if m[i] + 1 == shape[i] {
                (1.0, -(strides[i] as isize))
            } else {
                continue;
            };
            let mut w = outward;
            for j in (0..n).filter(|&j| j != i) {
                w *= h[j];
                if m[j] == 0 || m[j] + 1 == shape[j] {
                    w *= 0.5;
                }
            }
            let value = if stokes {
                let k1 = (k as isize + step) as usize;
                let k2 = (k as isize + 2 * step) as usize;
                (5.0 * s[i][k] - 2.0 * s[i][k1] + s[i][k2]) / 4.0
            } else {
                s[i][k]
            };
            total += w * value;
        }
    }
    total
}

pub fn green_identity_residual(u: &FormField, v: &FormField, region: &Region) -> Result<GreenResidual> {
    check(u, v)?;
    let u = u.restrict(region)?;
    let v = v.restrict(region)?;
    let grid = u.grid().clone();
    let s = flux_lattices(&u, &v);
    let mut lhs = vec![0.0; grid.len()];
    for (i, si) in s.iter().enumerate() {
        for (l, d) in lhs.iter_mut().zip(difference(&grid, si, i)) {
            *l += d;
        }
    }
    let a = scalar_product_zero(&u, &v.kahler_derivative())?;
    let b = scalar_product_zero(&v, &u.kahler_derivative())?;
    let rhs: Vec<f64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
    let inner = inner_mask(&grid, 1);
    let pointwise = lhs
        .iter()
        .zip(&rhs)
        .zip(&inner)
        .filter(|(_, m)| **m)
        .map(|((l, r), _)| (l - r).abs())
        .fold(0.0, f64::max);
    let weights = trapezoid_weights(&grid);
    let surface = surface_flux(&grid, &s, true);
    let volume: f64 = weights.iter().zip(&rhs).map(|(w, r)| w * r).sum();
    Ok(GreenResidual {
        pointwise,
        integrated: (surface - volume).abs(),
        surface,
        surface_trapezoid: surface_flux(&grid, &s, false),
        divergence: weights.iter().zip(&lhs).map(|(w, l)| w * l).sum(),
        volume,
    })
}

/// `Σ_A a_A² dV` over the region with trapezoid weights.
pub fn energy_norm(alpha: &FormField, region: &Region) -> Result<f64> {
    let local = alpha.restrict(region)?;
    let w = trapezoid_weights(local.grid());
    Ok(local
        .components()
        .map(|(_, v)| v.iter().zip(&w).map(|(x, w)| x * x * w).sum::<f64>())
        .sum())
}
