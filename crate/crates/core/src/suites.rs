//! Analytic test configurations shared by the command-line suites.

use crate::algebra::BasisIndex;
use crate::error::Result;
use crate::field::FormField;
use crate::grid::{Axis, GridSpec, Region};
use crate::hodge::{decompose_region, Comparison, DecompositionConfig};

/// `exp(−r²)`.
pub fn gaussian(x: &[f64]) -> f64 {
    (-x.iter().map(|v| v * v).sum::<f64>()).exp()
}

/// A field with every basis component a Gaussian times a linear factor,
/// the factors varied by `phase`.
pub fn gaussian_field(grid: &GridSpec, phase: f64) -> FormField {
    let n = grid.dim();
    let comps: Vec<(BasisIndex, Vec<f64>)> = BasisIndex::all(n)
        .into_iter()
        .enumerate()
        .map(|(k, idx)| {
            let a = phase + k as f64;
            let f = FormField::from_fn(grid, idx, |x| {
                (a * 0.37).sin() * (1.0 + 0.3 * x[0] - 0.2 * x[n - 1] * a.cos()) * gaussian(x)
            });
            (idx, f.component_or_zero(idx))
        })
        .collect();
    FormField::from_components(grid, comps).expect("indices are valid for the grid")
}

/// `df` for `f = exp(−r²)`.
pub fn gaussian_gradient(grid: &GridSpec) -> FormField {
    FormField::scalar_from_fn(grid, gaussian).exterior_derivative()
}

/// The pair of Gaussian fields and the sub-box used by the Green suite, on
/// `[−2,2]³` with `points` nodes per axis.
pub fn green_configuration(points: usize) -> Result<(FormField, FormField, Region)> {
    let g = GridSpec::cube(3, -2.0, 2.0, points)?;
    let u = FormField::from_fn(&g, BasisIndex::axis(1), |x| (x[0] + 0.5) * gaussian(x))
        .add(&FormField::from_fn(&g, BasisIndex::axis(2), |x| x[2] * gaussian(x)))?;
    let v = FormField::from_fn(&g, BasisIndex::axis(1), gaussian)
        .add(&FormField::scalar_from_fn(&g, |x| (1.0 + x[1]) * gaussian(x)))?;
    let p = points - 1;
    let region = Region::new(&g, &[(p / 2, p), (p / 4, p - p / 4), (0, p)])?;
    Ok((u, v, region))
}

/// Fields used for the surface-integral check on the box `[0,2]×[−1,1]²`,
/// which cuts the Gaussian in half.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundaryKind {
    /// `α = df`: closed and co-closed in the continuum except through `δα`,
    /// so the predicted `dF` vanishes and errors are measured against `‖α‖`.
    Gradient,
    /// A 1-form with nonzero `dα`, testing the exterior line.
    Curl,
    /// A 2-form with nonzero `δα`, testing the interior line.
    Coexact,
}

impl BoundaryKind {
    pub const ALL: [BoundaryKind; 3] = [BoundaryKind::Gradient, BoundaryKind::Curl, BoundaryKind::Coexact];

    pub fn name(self) -> &'static str {
        match self {
            BoundaryKind::Gradient => "gradient",
            BoundaryKind::Curl => "curl",
            BoundaryKind::Coexact => "coexact",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }

    pub fn field(self, grid: &GridSpec) -> FormField {
        let ix = |axes: &[usize]| BasisIndex::from_axes(axes, 3).expect("valid index");
        let f = |grid: &GridSpec, idx, h: fn(&[f64]) -> f64| FormField::from_fn(grid, idx, move |x| h(x) * gaussian(x));
        let sum = |parts: Vec<FormField>| parts.into_iter().reduce(|a, b| a.add(&b).expect("same grid")).expect("nonempty");
        match self {
            BoundaryKind::Gradient => gaussian_gradient(grid),
            BoundaryKind::Curl => sum(vec![
                f(grid, ix(&[1]), |x| x[1]),
                f(grid, ix(&[2]), |x| x[2] + 0.5 * x[0]),
                f(grid, ix(&[3]), |x| -x[0]),
            ]),
            BoundaryKind::Coexact => sum(vec![
                f(grid, ix(&[1, 2]), |x| x[2]),
                f(grid, ix(&[2, 3]), |x| x[0] + 0.3 * x[1]),
                f(grid, ix(&[1, 3]), |x| x[1]),
            ]),
        }
    }
}

pub fn boundary_grid(points: usize) -> Result<GridSpec> {
    GridSpec::new(vec![
        Axis::new(0.0, 2.0, points),
        Axis::new(-1.0, 1.0, points),
        Axis::new(-1.0, 1.0, points),
    ])
}

/// One resolution of the region-mode study.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundaryRow {
    pub kind: BoundaryKind,
    pub points: usize,
    pub alpha_norm: f64,
    /// Surface prediction of `dF` against the discrete `dF`.
    pub exterior: Comparison,
    /// Surface prediction of `δF` against the discrete `δF`.
    pub interior: Comparison,
    pub reconstruction_error: f64,
    /// `(‖δdF‖, ‖dδF‖)`.
    pub hyperharmonic: (f64, f64),
}

impl BoundaryRow {
    /// Error of the surface prediction. For the gradient both lines vanish
    /// (`dα = 0`, and `δα` is a 0-form with no interior line), so the
    /// discrete `dF` and `δF` are pure truncation error and are measured
    /// against `‖α‖`. The curl is measured on the exterior line and the
    /// co-exact form on the interior line, each against the discrete field.
    pub fn relative_error(&self) -> f64 {
        match self.kind {
            BoundaryKind::Gradient => self.exterior.difference_norm.hypot(self.interior.difference_norm) / self.alpha_norm,
            BoundaryKind::Curl => self.exterior.relative_error(),
            BoundaryKind::Coexact => self.interior.relative_error(),
        }
    }
}

pub fn boundary_row(kind: BoundaryKind, points: usize, cfg: &DecompositionConfig) -> Result<BoundaryRow> {
    let grid = boundary_grid(points)?;
    let alpha = kind.field(&grid);
    let cfg = DecompositionConfig {
        boundary_diagnostics: true,
        probes: None,
        ..cfg.clone()
    };
    let res = decompose_region(&alpha, &Region::full(&grid), &cfg)?;
    let d = res.diagnostics;
    Ok(BoundaryRow {
        kind,
        points,
        alpha_norm: d.alpha_norm,
        exterior: d.boundary_exterior.expect("computed"),
        interior: d.boundary_interior.expect("computed"),
        reconstruction_error: d.reconstruction_error,
        hyperharmonic: d.hyperharmonic.expect("computed without probes"),
    })
}

/// Rounding floor for quantities that vanish identically in exact arithmetic.
pub const ROUNDING_FLOOR: f64 = 1e-12;

/// Strictly decreasing, or every value below `floor` (zero up to rounding).
pub fn decreasing_or_negligible(values: &[f64], floor: f64) -> bool {
    values.iter().all(|v| *v <= floor) || values.windows(2).all(|w| w[1] < w[0])
}
