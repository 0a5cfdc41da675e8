//! Helmholtz–Hodge decomposition of a sampled k-form.
//!
//! Full space: `α = c [d(ω^A I^δ_A) + δ(ω^A I^d_A)]` with
//! `c = −1/((n−2) S_{n−1})`, the integrals taken over the whole grid.
//! Region: the same integrals over a sub-box, and the harmonic part `F` is
//! whatever remains, so the three parts add up to `α` exactly.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;

use crate::algebra::{basis_right_contract, basis_wedge, BasisIndex};
use crate::error::{Error, Result};
use crate::field::FormField;
use crate::grid::{inner_mask, GridSpec, Region};
use crate::potential::{integral_with_table, IntegralPart, KernelSpec, KernelTable, SelfCellRule};

#[derive(Clone, Debug, PartialEq)]
pub struct DecompositionConfig {
    pub self_cell: SelfCellRule,
    /// Nodes closer than this to a face are left out of every norm.
    pub offset: usize,
    /// Largest boundary value of `|α|`, `|dα|`, `|δα|` relative to `max |α|`
    /// before the full-space decay warning is raised.
    pub decay_tolerance: f64,
    /// Evaluate only at these nodes of the working grid (the region's
    /// sub-grid in region mode). Diagnostics are then restricted to them.
    pub probes: Option<Vec<usize>>,
    /// Compute the surface-integral prediction of `dF` and `δF` in region mode.
    pub boundary_diagnostics: bool,
}

impl Default for DecompositionConfig {
    fn default() -> Self {
        DecompositionConfig {
            self_cell: SelfCellRule::default(),
            offset: 2,
            decay_tolerance: 1e-4,
            probes: None,
            boundary_diagnostics: true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    FullSpace,
    Region,
}

/// A predicted field against its discrete counterpart.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Comparison {
    pub predicted_norm: f64,
    pub discrete_norm: f64,
    pub difference_norm: f64,
}

impl Comparison {
    pub fn relative_error(&self) -> f64 {
        if self.discrete_norm > 0.0 {
            self.difference_norm / self.discrete_norm
        } else {
            self.difference_norm
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Diagnostics {
    pub mode: Mode,
    pub n: usize,
    pub grade: usize,
    pub self_cell: SelfCellRule,
    pub offset: usize,
    pub alpha_norm: f64,
    pub closed_norm: f64,
    pub coclosed_norm: f64,
    pub harmonic_norm: f64,
    /// `‖closed + coclosed + harmonic − α‖ / ‖α‖`.
    pub reconstruction_error: f64,
    /// `max |d closed|`, zero up to rounding.
    pub closed_exterior_residual: f64,
    /// `max |δ coclosed|`, zero up to rounding.
    pub coclosed_interior_residual: f64,
    /// `(‖δdF‖, ‖dδF‖)` in region mode.
    pub hyperharmonic: Option<(f64, f64)>,
    /// Surface-integral `dF` against the discrete `dF`.
    pub boundary_exterior: Option<Comparison>,
    /// Surface-integral `δF` against the discrete `δF`.
    pub boundary_interior: Option<Comparison>,
    pub decay_ratio: f64,
    pub decay_warning: bool,
    pub seconds: f64,
}

#[derive(Clone, Debug)]
pub struct DecompositionResult {
    pub closed: FormField,
    pub coclosed: FormField,
    pub harmonic: FormField,
    pub diagnostics: Diagnostics,
}

/// Nodes of the first-derivative stencils of `probes`.
fn stencil_closure(grid: &GridSpec, probes: &[usize]) -> Vec<usize> {
    let shape = grid.shape();
    let mut set = std::collections::BTreeSet::new();
    for &p in probes {
        set.insert(p);
        let m = grid.multi_index(p);
        for (i, &pi) in shape.iter().enumerate() {
            let reach: Vec<usize> = match m[i] {
                0 => vec![1, 2],
                k if k + 1 == pi => vec![k - 1, k - 2],
                k => vec![k - 1, k + 1],
            };
            for r in reach {
                let mut q = m.clone();
                q[i] = r;
                set.insert(grid.index(&q));
            }
        }
    }
    set.into_iter().collect()
}

fn probe_mask(grid: &GridSpec, probes: &[usize]) -> Vec<bool> {
    let mut mask = vec![false; grid.len()];
    for &p in probes {
        mask[p] = true;
    }
    mask
}

/// Max of `|α|`, `|dα|`, `|δα|` on the grid faces relative to `max |α|`.
fn decay_ratio(alpha: &FormField) -> f64 {
    let grid = alpha.grid();
    let face: Vec<bool> = inner_mask(grid, 1).iter().map(|m| !m).collect();
    let peak = alpha.max_abs(0);
    if peak == 0.0 {
        return 0.0;
    }
    let on_face = |f: &FormField| {
        f.components()
            .flat_map(|(_, v)| v.iter().zip(&face).filter(|(_, m)| **m).map(|(x, _)| x.abs()))
            .fold(0.0, f64::max)
    };
    on_face(alpha)
        .max(on_face(&alpha.exterior_derivative()))
        .max(on_face(&alpha.interior_derivative()))
        / peak
}

struct Parts {
    closed: FormField,
    coclosed: FormField,
    grade: usize,
}

fn potential_parts(local: &FormField, spec: &KernelSpec, eval: Option<&[usize]>) -> Result<Parts> {
    let grade = local.homogeneous_grade(0)?;
    let nu = local.interior_derivative();
    let mu = local.exterior_derivative();
    let table = KernelTable::new(local.grid(), spec)?;
    let i_delta = integral_with_table(&nu, IntegralPart::Delta, grade.saturating_sub(1), &table, eval)?;
    let i_d = integral_with_table(&mu, IntegralPart::D, grade + 1, &table, eval)?;
    let c = spec.normalization;
    Ok(Parts {
        closed: i_delta.assemble().exterior_derivative().scale(c),
        coclosed: i_d.assemble().interior_derivative().scale(c),
        grade,
    })
}

fn finish(
    mode: Mode,
    alpha: &FormField,
    parts: Parts,
    harmonic: FormField,
    cfg: &DecompositionConfig,
    started: Instant,
) -> Result<DecompositionResult> {
    let grid = alpha.grid();
    let mut mask = inner_mask(grid, cfg.offset);
    let (closed, coclosed, harmonic) = match &cfg.probes {
        Some(p) => {
            let pm = probe_mask(grid, p);
            mask.iter_mut().zip(&pm).for_each(|(m, q)| *m &= *q);
            (parts.closed.masked(&pm), parts.coclosed.masked(&pm), harmonic.masked(&pm))
        }
        None => (parts.closed, parts.coclosed, harmonic),
    };
    let alpha_norm = alpha.l2_norm_mask(&mask);
    let recon = closed.add(&coclosed)?.add(&harmonic)?.sub(alpha)?.l2_norm_mask(&mask);
    let full = cfg.probes.is_none();
    let diagnostics = Diagnostics {
        mode,
        n: grid.dim(),
        grade: parts.grade,
        self_cell: cfg.self_cell,
        offset: cfg.offset,
        alpha_norm,
        closed_norm: closed.l2_norm_mask(&mask),
        coclosed_norm: coclosed.l2_norm_mask(&mask),
        harmonic_norm: harmonic.l2_norm_mask(&mask),
        reconstruction_error: if alpha_norm > 0.0 { recon / alpha_norm } else { recon },
        closed_exterior_residual: if full { closed.exterior_derivative().max_abs(cfg.offset) } else { f64::NAN },
        coclosed_interior_residual: if full { coclosed.interior_derivative().max_abs(cfg.offset) } else { f64::NAN },
        hyperharmonic: None,
        boundary_exterior: None,
        boundary_interior: None,
        decay_ratio: 0.0,
        decay_warning: false,
        seconds: 0.0,
    };
    Ok(DecompositionResult {
        closed,
        coclosed,
        harmonic,
        diagnostics: Diagnostics {
            seconds: started.elapsed().as_secs_f64(),
            ..diagnostics
        },
    })
}

/// Decomposes a decaying k-form over its whole grid; the harmonic part is zero.
pub fn decompose_full_space(alpha: &FormField, cfg: &DecompositionConfig) -> Result<DecompositionResult> {
    let started = Instant::now();
    let spec = KernelSpec::new(alpha.dim(), cfg.self_cell)?;
    let eval = cfg.probes.as_ref().map(|p| stencil_closure(alpha.grid(), p));
    let parts = potential_parts(alpha, &spec, eval.as_deref())?;
    let harmonic = FormField::zeros(alpha.grid());
    let mut res = finish(Mode::FullSpace, alpha, parts, harmonic, cfg, started)?;
    let ratio = decay_ratio(alpha);
    res.diagnostics.decay_ratio = ratio;
    res.diagnostics.decay_warning = ratio > cfg.decay_tolerance;
    res.diagnostics.seconds = started.elapsed().as_secs_f64();
    Ok(res)
}

/// Decomposes `α` restricted to a sub-box. All returned fields live on the
/// sub-box grid.
pub fn decompose_region(alpha: &FormField, region: &Region, cfg: &DecompositionConfig) -> Result<DecompositionResult> {
    let started = Instant::now();
    let local = alpha.restrict(region)?;
    if inner_mask(local.grid(), cfg.offset.max(1)).iter().all(|m| !m) {
        return Err(Error::RegionTooThin(cfg.offset.max(1)));
    }
    let spec = KernelSpec::new(alpha.dim(), cfg.self_cell)?;
    let eval = cfg.probes.as_ref().map(|p| stencil_closure(local.grid(), p));
    let parts = potential_parts(&local, &spec, eval.as_deref())?;
    let harmonic = local.sub(&parts.closed)?.sub(&parts.coclosed)?;
    let hyper = if cfg.probes.is_none() {
        Some(hyperharmonic_of(&harmonic, cfg.offset)?)
    } else {
        None
    };
    let whole = Region::full(local.grid());
    let (bext, bint) = if cfg.boundary_diagnostics && cfg.probes.is_none() {
        let d_f = harmonic.exterior_derivative();
        let delta_f = harmonic.interior_derivative();
        let pe = boundary_term(&local, &whole, BoundaryPart::Exterior, cfg)?;
        let pi = boundary_term(&local, &whole, BoundaryPart::Interior, cfg)?;
        (Some(compare(&pe, &d_f, cfg.offset)?), Some(compare(&pi, &delta_f, cfg.offset)?))
    } else {
        (None, None)
    };
    let mut res = finish(Mode::Region, &local, parts, harmonic, cfg, started)?;
    res.diagnostics.hyperharmonic = hyper;
    res.diagnostics.boundary_exterior = bext;
    res.diagnostics.boundary_interior = bint;
    res.diagnostics.seconds = started.elapsed().as_secs_f64();
    Ok(res)
}

/// Compares two fields over nodes at least `offset` cells inside.
pub fn compare(predicted: &FormField, discrete: &FormField, offset: usize) -> Result<Comparison> {
    Ok(Comparison {
        predicted_norm: predicted.l2_norm(offset),
        discrete_norm: discrete.l2_norm(offset),
        difference_norm: predicted.sub(discrete)?.l2_norm(offset),
    })
}

fn hyperharmonic_of(f: &FormField, offset: usize) -> Result<(f64, f64)> {
    if inner_mask(f.grid(), offset).iter().all(|m| !m) {
        return Err(Error::RegionTooThin(offset));
    }
    Ok((
        f.exterior_derivative().interior_derivative().l2_norm(offset),
        f.interior_derivative().exterior_derivative().l2_norm(offset),
    ))
}

/// `(‖δdF‖₂, ‖dδF‖₂)` over nodes at least `offset` cells inside the region.
pub fn hyperharmonic_residual(f: &FormField, region: &Region, offset: usize) -> Result<(f64, f64)> {
    hyperharmonic_of(&f.restrict(region)?, offset)
}

/// Which line of the surface-integral representation of `F`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundaryPart {
    /// Sourced by `dα`; predicts `dF` with factors `[(dx^A ∧ dx^i) · dx^l]`.
    Exterior,
    /// Sourced by `δα`; predicts `δF` with factors `[(dx^A · dx^i) ∧ dx^l]`.
    Interior,
}

fn boundary_factor(part: BoundaryPart, a: BasisIndex, i: usize, l: usize) -> Option<(BasisIndex, f64)> {
    match part {
        BoundaryPart::Exterior => {
            let (b, s1) = basis_wedge(a, BasisIndex::axis(i))?;
            let (c, s2) = basis_right_contract(b, l)?;
            Some((c, s1 * s2))
        }
        BoundaryPart::Interior => {
            let (b, s1) = basis_right_contract(a, i)?;
            let (c, s2) = basis_wedge(b, BasisIndex::axis(l))?;
            Some((c, s1 * s2))
        }
    }
}

/// Surface-integral prediction of `dF` (exterior part) or `δF` (interior
/// part) for the harmonic remainder of `α` on a region:
///
/// `c Σ [dx^A (∧|·) dx^i] (·|∧) dx^l ∮ ∂'_l r^{2−n} s_A n_i dS'`
///
/// with `s = dα` or `δα`, `n_i` the outward normal, and trapezoid weights on
/// the faces of the sub-box. Values are returned on the sub-box grid at nodes
/// off its faces; face nodes are zero.
pub fn boundary_term(
    alpha: &FormField,
    region: &Region,
    part: BoundaryPart,
    cfg: &DecompositionConfig,
) -> Result<FormField> {
    let local = alpha.restrict(region)?;
    let grid = local.grid().clone();
    let n = grid.dim();
    let spec = KernelSpec::new(n, cfg.self_cell)?;
    let source = match part {
        BoundaryPart::Exterior => local.exterior_derivative(),
        BoundaryPart::Interior => local.interior_derivative(),
    };
    let shape = grid.shape();
    let h = grid.spacings();

    // output slots for every reachable basis index
    let mut slots: BTreeMap<BasisIndex, usize> = BTreeMap::new();
    for (a, _) in source.components() {
        for i in 1..=n {
            for l in 1..=n {
                if let Some((b, _)) = boundary_factor(part, a, i, l) {
                    let next = slots.len();
                    slots.entry(b).or_insert(next);
                }
            }
        }
    }

    // per face node: coordinates and, for each l, a sparse slot update
    struct FaceNode {
        x: Vec<f64>,
        terms: Vec<(usize, usize, f64)>,
    }
    let mut faces = Vec::new();
    for i in 0..n {
        for (side, outward) in [(0usize, -1.0), (shape[i] - 1, 1.0)] {
            for k in 0..grid.len() {
                let m = grid.multi_index(k);
                if m[i] != side {
                    continue;
                }
                let mut w = outward;
                for j in 0..n {
                    if j != i {
                        w *= h[j];
                        if m[j] == 0 || m[j] + 1 == shape[j] {
                            w *= 0.5;
                        }
                    }
                }
                let mut terms = Vec::new();
                for (a, v) in source.components() {
                    if v[k] == 0.0 {
                        continue;
                    }
                    for l in 1..=n {
                        if let Some((b, s)) = boundary_factor(part, a, i + 1, l) {
                            terms.push((l - 1, slots[&b], s * v[k] * w));
                        }
                    }
                }
                if !terms.is_empty() {
                    faces.push(FaceNode {
                        x: grid.coordinates(k),
                        terms,
                    });
                }
            }
        }
    }

    let eval: Vec<usize> = {
        let inner = inner_mask(&grid, 1);
        (0..grid.len()).filter(|&k| inner[k]).collect()
    };
    let nf = n as f64;
    let values: Vec<Vec<f64>> = eval
        .par_iter()
        .map(|&k| {
            let x = grid.coordinates(k);
            let mut acc = vec![0.0; slots.len()];
            let mut grad = vec![0.0; n];
            for f in &faces {
                let mut r2 = 0.0;
                for l in 0..n {
                    let d = x[l] - f.x[l];
                    grad[l] = d;
                    r2 += d * d;
                }
                // ∂'_l r^{2−n} = (n−2)(x_l − x'_l)/r^n
                let g = (nf - 2.0) * r2.powf(-nf / 2.0);
                for &(l, slot, c) in &f.terms {
                    acc[slot] += g * grad[l] * c;
                }
            }
            acc
        })
        .collect();

    let mut lattices = vec![vec![0.0; grid.len()]; slots.len()];
    for (&k, acc) in eval.iter().zip(&values) {
        for (s, v) in acc.iter().enumerate() {
            lattices[s][k] = v * spec.normalization;
        }
    }
    FormField::from_components(&grid, slots.iter().map(|(b, &s)| (*b, std::mem::take(&mut lattices[s]))))
}

/// The volume term left by integrating the composed derivatives by parts:
///
/// `E(x) = −Σ_l Σ_{x'} ∂'_l r^{2−n}(x − x') W_l(x') V`,
/// `W_l = Σ_{A,i} [dx^A (·|∧) dx^i] (∧|·) dx^l D_i s_A`,
///
/// with `s = δα` (interior part, top line) or `dα` (exterior part). `W_l`
/// collapses to `±(δδα) ∧ dx^l` or `±(ddα) · dx^l`, which the commuting
/// central differences make zero at every node off the faces; those are the
/// source nodes summed over. Returns `E` at nodes `offset` cells inside and
/// the largest sum of absolute contributions, the scale against which `E`
/// is small.
pub fn volume_cancellation_term(
    alpha: &FormField,
    region: &Region,
    part: BoundaryPart,
    offset: usize,
) -> Result<(FormField, f64)> {
    let local = alpha.restrict(region)?;
    let grid = local.grid().clone();
    let n = grid.dim();
    if n < 3 {
        return Err(Error::KernelDimension(n));
    }
    let source = match part {
        BoundaryPart::Interior => local.interior_derivative(),
        BoundaryPart::Exterior => local.exterior_derivative(),
    };
    let sources_mask = inner_mask(&grid, 1);
    let factor = |a: BasisIndex, i: usize, l: usize| -> Option<(BasisIndex, f64)> {
        match part {
            BoundaryPart::Interior => {
                let (b, s1) = basis_right_contract(a, i)?;
                let (c, s2) = basis_wedge(b, BasisIndex::axis(l))?;
                Some((c, s1 * s2))
            }
            BoundaryPart::Exterior => {
                let (b, s1) = basis_wedge(a, BasisIndex::axis(i))?;
                let (c, s2) = basis_right_contract(b, l)?;
                Some((c, s1 * s2))
            }
        }
    };

    let mut w: Vec<BTreeMap<BasisIndex, Vec<f64>>> = vec![BTreeMap::new(); n];
    let mut abs_terms = vec![0.0; grid.len()];
    for (a, v) in source.components() {
        for i in 1..=n {
            let di = crate::field::difference(&grid, v, i - 1);
            for (t, d) in abs_terms.iter_mut().zip(&di) {
                *t += d.abs();
            }
            for (l, wl) in w.iter_mut().enumerate() {
                if let Some((b, s)) = factor(a, i, l + 1) {
                    let e = wl.entry(b).or_insert_with(|| vec![0.0; grid.len()]);
                    for ((e, d), m) in e.iter_mut().zip(&di).zip(&sources_mask) {
                        if *m {
                            *e += s * d;
                        }
                    }
                }
            }
        }
    }
    abs_terms.iter_mut().zip(&sources_mask).for_each(|(t, m)| {
        if !m {
            *t = 0.0;
        }
    });

    let eval_mask = inner_mask(&grid, offset);
    let eval: Vec<usize> = (0..grid.len()).filter(|&k| eval_mask[k]).collect();
    let nf = n as f64;
    let mut out: BTreeMap<BasisIndex, Vec<f64>> = BTreeMap::new();
    for (l, wl) in w.iter().enumerate() {
        if wl.is_empty() {
            continue;
        }
        // offset o = x' − x, so ∂'_l r^{2−n}(x − x') = −(n−2) o_l / r^n
        let table = KernelTable::from_fn(&grid, |o, r2| {
            if r2 == 0.0 {
                0.0
            } else {
                -(nf - 2.0) * o[l] * r2.powf(-nf / 2.0)
            }
        });
        let (idx, data): (Vec<BasisIndex>, Vec<&[f64]>) = wl.iter().map(|(b, v)| (*b, v.as_slice())).unzip();
        let sums = table.convolve(&grid, &data, Some(&eval));
        for (b, s) in idx.into_iter().zip(sums) {
            let e = out.entry(b).or_insert_with(|| vec![0.0; grid.len()]);
            for (e, v) in e.iter_mut().zip(&s) {
                *e -= v;
            }
        }
    }
    let abs_table = KernelTable::from_fn(&grid, |_, r2| {
        if r2 == 0.0 {
            0.0
        } else {
            (nf - 2.0) * r2.powf((1.0 - nf) / 2.0)
        }
    });
    let scale_sums = abs_table.convolve(&grid, &[&abs_terms], Some(&eval));
    let scale = eval.iter().map(|&k| scale_sums[0][k]).fold(0.0, f64::max);
    Ok((FormField::from_components(&grid, out)?, scale))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Multivector;

    #[test]
    fn constant_form_is_harmonic() {
        let g = GridSpec::cube(3, -1.0, 1.0, 9).unwrap();
        let c = Multivector::from_terms(3, [(BasisIndex::axis(1), 2.0), (BasisIndex::axis(3), -0.5)]).unwrap();
        let alpha = FormField::constant(&g, &c);
        let region = Region::parse(&g, "1:7,0:8,2:8").unwrap();
        let res = decompose_region(&alpha, &region, &DecompositionConfig::default()).unwrap();
        assert!(res.closed.is_zero() && res.coclosed.is_zero());
        assert!(res.harmonic.sub(&alpha.restrict(&region).unwrap()).unwrap().is_zero());
        assert_eq!(res.diagnostics.hyperharmonic, Some((0.0, 0.0)));
        let b = res.diagnostics.boundary_exterior.unwrap();
        assert_eq!(b.predicted_norm, 0.0);
    }

    #[test]
    fn zero_field() {
        let g = GridSpec::cube(3, -1.0, 1.0, 7).unwrap();
        let alpha = FormField::zeros(&g);
        let res = decompose_full_space(&alpha, &DecompositionConfig::default()).unwrap();
        assert!(res.closed.is_zero() && res.coclosed.is_zero() && res.harmonic.is_zero());
    }

    #[test]
    fn rejects_mixed_grades() {
        let g = GridSpec::cube(3, -1.0, 1.0, 7).unwrap();
        let alpha = FormField::scalar_from_fn(&g, |x| x[0]).add(&FormField::from_fn(&g, BasisIndex::axis(1), |x| x[1])).unwrap();
        assert!(matches!(
            decompose_full_space(&alpha, &DecompositionConfig::default()),
            Err(Error::NotHomogeneous)
        ));
    }

    #[test]
    fn closed_and_coclosed_parts_are_exact() {
        let g = GridSpec::cube(3, -5.0, 5.0, 21).unwrap();
        let alpha = FormField::from_fn(&g, BasisIndex::axis(1), |x| x[1] * (-x.iter().map(|v| v * v).sum::<f64>()).exp())
            .add(&FormField::from_fn(&g, BasisIndex::axis(2), |x| x[2] * (-x.iter().map(|v| v * v).sum::<f64>()).exp()))
            .unwrap();
        let res = decompose_full_space(&alpha, &DecompositionConfig::default()).unwrap();
        assert!(res.diagnostics.closed_exterior_residual < 1e-12);
        assert!(res.diagnostics.coclosed_interior_residual < 1e-12);
        assert!(!res.diagnostics.decay_warning, "{}", res.diagnostics.decay_ratio);
    }

    #[test]
    fn probes_match_full_evaluation() {
        let g = GridSpec::cube(3, -2.0, 2.0, 11).unwrap();
        let alpha = FormField::from_fn(&g, BasisIndex::axis(2), |x| (x[0] - 0.3 * x[2]) * (-x.iter().map(|v| v * v).sum::<f64>()).exp());
        let full = decompose_full_space(&alpha, &DecompositionConfig::default()).unwrap();
        let probes = vec![g.index(&[5, 5, 5]), g.index(&[2, 7, 3]), g.index(&[0, 4, 10])];
        let cfg = DecompositionConfig {
            probes: Some(probes.clone()),
            ..Default::default()
        };
        let part = decompose_full_space(&alpha, &cfg).unwrap();
        for &p in &probes {
            assert!(full.closed.at(p).max_abs_diff(&part.closed.at(p)) < 1e-14);
            assert!(full.coclosed.at(p).max_abs_diff(&part.coclosed.at(p)) < 1e-14);
        }
    }

    #[test]
    fn volume_term_cancels() {
        let g = GridSpec::cube(3, -2.0, 2.0, 11).unwrap();
        let r = |x: &[f64]| x.iter().map(|v| v * v).sum::<f64>();
        let alpha = FormField::from_fn(&g, BasisIndex::from_axes(&[1, 2], 3).unwrap(), |x| (1.0 + x[2]) * (-r(x)).exp())
            .add(&FormField::from_fn(&g, BasisIndex::from_axes(&[2, 3], 3).unwrap(), |x| x[0] * x[1] * (-r(x)).exp()))
            .unwrap();
        for part in [BoundaryPart::Interior, BoundaryPart::Exterior] {
            let (e, scale) = volume_cancellation_term(&alpha, &Region::full(&g), part, 2).unwrap();
            assert!(scale > 0.0);
            assert!(e.max_abs(0) <= 1e-10 * scale, "{part:?}: {} vs {scale}", e.max_abs(0));
        }
    }
}
