//! Newtonian potential of sampled fields: the kernel `1/r^(n−2)`, its
//! normalization, and midpoint-rule convolution with a self-cell rule at
//! `r = 0`.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use rayon::prelude::*;
use statrs::function::gamma::gamma;

use crate::algebra::{basis_wedge, complement, BasisIndex};
use crate::error::{Error, Result};
use crate::field::FormField;
use crate::grid::{GridSpec, Region};
use crate::lattice_sum::epstein_zeta;

/// Surface area of the unit (n−1)-sphere, `2π^(n/2)/Γ(n/2)`.
pub fn unit_sphere_area(n: usize) -> f64 {
    let h = n as f64 / 2.0;
    2.0 * PI.powf(h) / gamma(h)
}

/// `1/r^(n−2)` for `r > 0`. The `r = 0` case belongs to [`SelfCellRule`].
pub fn kernel(r: f64, n: usize) -> Result<f64> {
    if n < 3 {
        return Err(Error::KernelDimension(n));
    }
    Ok(r.powi(-(n as i32 - 2)))
}

/// `−1/((n−2) S_{n−1})`, the factor turning the potential of `∂∂φ` into `φ`.
pub fn normalization(n: usize) -> Result<f64> {
    if n < 3 {
        return Err(Error::KernelDimension(n));
    }
    Ok(-1.0 / ((n as f64 - 2.0) * unit_sphere_area(n)))
}

/// Value used for the kernel on the node's own cell.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SelfCellRule {
    /// Average of `1/r^(n−2)` over the ball of equal volume: `(n/2) a^(2−n)`.
    EqualVolumeBall,
    /// Exact average of `1/r^(n−2)` over the cell.
    CubeAverage,
    /// The value that removes the isotropic `O(h²)` error of the composed
    /// operator `c · V Σ K (δd + dδ)`, accounting for the discrete lattice
    /// sum of the kernel (continued Epstein zeta).
    #[default]
    StencilConsistent,
}

impl SelfCellRule {
    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "ball" | "equal-volume-ball" => Some(Self::EqualVolumeBall),
            "cube" | "cube-average" => Some(Self::CubeAverage),
            "consistent" | "stencil-consistent" => Some(Self::StencilConsistent),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::EqualVolumeBall => "equal-volume-ball",
            Self::CubeAverage => "cube-average",
            Self::StencilConsistent => "stencil-consistent",
        }
    }

    /// Self-cell kernel value for a cell with the given spacings.
    pub fn value(&self, spacings: &[f64]) -> f64 {
        let n = spacings.len();
        let nf = n as f64;
        let volume: f64 = spacings.iter().product();
        let s = unit_sphere_area(n);
        match self {
            Self::EqualVolumeBall => {
                let a = (nf * volume / s).powf(1.0 / nf);
                nf / 2.0 * a.powf(2.0 - nf)
            }
            Self::CubeAverage => cube_average(spacings),
            Self::StencilConsistent => {
                let h2: f64 = spacings.iter().map(|h| h * h).sum();
                let beta = (nf - 2.0) * s * h2 / (nf * (nf + 2.0));
                beta / volume - epstein_zeta(spacings, nf - 2.0)
            }
        }
    }
}

fn gauss_legendre(q: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; q];
    let mut w = vec![0.0; q];
    for i in 0..q {
        let mut z = (PI * (i as f64 + 0.75) / (q as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=q {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = q as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    (x, w)
}

/// Composite Gauss–Legendre nodes and weights on `[-half, half]`.
fn panel_rule(half: f64, panels: usize, q: usize) -> (Vec<f64>, Vec<f64>) {
    let (gx, gw) = gauss_legendre(q);
    let width = 2.0 * half / panels as f64;
    let mut xs = Vec::with_capacity(panels * q);
    let mut ws = Vec::with_capacity(panels * q);
    for p in 0..panels {
        let mid = -half + (p as f64 + 0.5) * width;
        for (x, w) in gx.iter().zip(&gw) {
            xs.push(mid + 0.5 * width * x);
            ws.push(0.5 * width * w);
        }
    }
    (xs, ws)
}

/// Cell average of `|y|^(2−n)`: split the cell into `2n` pyramids with apex
/// at the centre; each contributes `(h_i/4) ∫_face |y|^(2−n) dA`.
fn cube_average(spacings: &[f64]) -> f64 {
    let n = spacings.len();
    let volume: f64 = spacings.iter().product();
    let q = 8;
    let budget = 2.0e6_f64;
    let per_dim = budget.powf(1.0 / (n.max(2) - 1) as f64).floor() as usize;
    let panels = (per_dim / q).clamp(1, 4);
    let mut total = 0.0;
    for i in 0..n {
        let dist = spacings[i] / 2.0;
        let rules: Vec<(Vec<f64>, Vec<f64>)> = (0..n)
            .filter(|&j| j != i)
            .map(|j| panel_rule(spacings[j] / 2.0, panels, q))
            .collect();
        let mut face = 0.0;
        let mut idx = vec![0usize; rules.len()];
        loop {
            let mut r2 = dist * dist;
            let mut w = 1.0;
            for (k, (xs, ws)) in rules.iter().enumerate() {
                r2 += xs[idx[k]] * xs[idx[k]];
                w *= ws[idx[k]];
            }
            face += w * r2.powf(1.0 - n as f64 / 2.0);
            let mut k = rules.len();
            let done = loop {
                if k == 0 {
                    break true;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < rules[k].0.len() {
                    break false;
                }
                idx[k] = 0;
            };
            if done {
                break;
            }
        }
        total += 2.0 * (spacings[i] / 4.0) * face;
    }
    total / volume
}

/// Dimension, normalization and self-cell rule of the Newtonian kernel.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KernelSpec {
    pub n: usize,
    pub normalization: f64,
    pub self_cell: SelfCellRule,
}

impl KernelSpec {
    pub fn new(n: usize, self_cell: SelfCellRule) -> Result<Self> {
        Ok(KernelSpec {
            n,
            normalization: normalization(n)?,
            self_cell,
        })
    }
}

/// Kernel values on all signed node offsets of a grid, including the
/// self-cell, premultiplied by the cell volume.
pub struct KernelTable {
    shape: Vec<usize>,
    strides: Vec<usize>,
    data: Vec<f64>,
}

impl KernelTable {
    pub fn new(grid: &GridSpec, spec: &KernelSpec) -> Result<Self> {
        if grid.dim() != spec.n {
            return Err(Error::DimensionMismatch {
                left: grid.dim(),
                right: spec.n,
            });
        }
        let n = grid.dim();
        let self_value = spec.self_cell.value(&grid.spacings());
        let exponent = -((n as f64 - 2.0) / 2.0);
        Ok(Self::from_fn(grid, |_, r2| {
            if r2 == 0.0 {
                self_value
            } else if n == 3 {
                1.0 / r2.sqrt()
            } else {
                r2.powf(exponent)
            }
        }))
    }

    /// Table of `f(o, |o|²) · V` over signed offsets `o = x' − x`.
    pub fn from_fn(grid: &GridSpec, f: impl Fn(&[f64], f64) -> f64 + Sync) -> Self {
        let n = grid.dim();
        let h = grid.spacings();
        let volume = grid.cell_volume();
        let shape: Vec<usize> = grid.shape().iter().map(|p| 2 * p - 1).collect();
        let mut strides = vec![1usize; n];
        for i in (0..n - 1).rev() {
            strides[i] = strides[i + 1] * shape[i + 1];
        }
        let len = strides[0] * shape[0];
        let centre: Vec<usize> = grid.shape().iter().map(|p| p - 1).collect();
        let data = (0..len)
            .into_par_iter()
            .map_init(
                || vec![0.0; n],
                |off, k| {
                    let mut rem = k;
                    let mut r2 = 0.0;
                    for i in 0..n {
                        let t = rem / strides[i];
                        rem %= strides[i];
                        off[i] = (t as f64 - centre[i] as f64) * h[i];
                        r2 += off[i] * off[i];
                    }
                    f(off, r2) * volume
                },
            )
            .collect();
        KernelTable {
            shape,
            strides,
            data,
        }
    }

    /// `V Σ_{x'} K(x − x') s(x')` for every source lattice `s` at each
    /// evaluation node `x` (all nodes when `eval` is `None`). Entries not
    /// evaluated are left at zero.
    pub fn convolve(&self, grid: &GridSpec, sources: &[&[f64]], eval: Option<&[usize]>) -> Vec<Vec<f64>> {
        let n = grid.dim();
        let p: Vec<usize> = grid.shape();
        let last = p[n - 1];
        let rows = grid.len() / last;
        let active: Vec<usize> = (0..sources.len())
            .filter(|&s| sources[s].iter().any(|v| *v != 0.0))
            .collect();
        let mut out = vec![vec![0.0; grid.len()]; sources.len()];
        if active.is_empty() {
            return out;
        }
        let nodes: Vec<usize> = match eval {
            Some(e) => e.to_vec(),
            None => (0..grid.len()).collect(),
        };
        let values: Vec<Vec<f64>> = nodes
            .par_iter()
            .map(|&node| {
                let m = grid.multi_index(node);
                let base: isize = (0..n)
                    .map(|i| (p[i] as isize - 1 - m[i] as isize) * self.strides[i] as isize)
                    .sum();
                let mut acc = vec![0.0; active.len()];
                let mut row_idx = vec![0usize; n - 1];
                for row in 0..rows {
                    let off: isize = base
                        + row_idx
                            .iter()
                            .zip(&self.strides)
                            .map(|(&r, &s)| (r * s) as isize)
                            .sum::<isize>();
                    let krow = &self.data[off as usize..off as usize + last];
                    for (a, &s) in acc.iter_mut().zip(&active) {
                        *a += dot(krow, &sources[s][row * last..(row + 1) * last]);
                    }
                    for k in (0..n - 1).rev() {
                        row_idx[k] += 1;
                        if row_idx[k] < p[k] {
                            break;
                        }
                        row_idx[k] = 0;
                    }
                }
                acc
            })
            .collect();
        for (node, acc) in nodes.iter().zip(values) {
            for (a, &s) in acc.iter().zip(&active) {
                out[s][*node] = *a;
            }
        }
        out
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }
}

#[inline]
fn dot(a: &[f64], b: &[f64]) -> f64 {
    let mut acc = [0.0f64; 4];
    let ca = a.chunks_exact(4);
    let cb = b.chunks_exact(4);
    let (ra, rb) = (ca.remainder(), cb.remainder());
    for (x, y) in ca.zip(cb) {
        acc[0] += x[0] * y[0];
        acc[1] += x[1] * y[1];
        acc[2] += x[2] * y[2];
        acc[3] += x[3] * y[3];
    }
    let mut s = (acc[0] + acc[1]) + (acc[2] + acc[3]);
    for (x, y) in ra.iter().zip(rb) {
        s += x * y;
    }
    s
}

/// Componentwise Newtonian potential `V Σ_{x'} K(x − x') u_A(x')` of a
/// field over its own grid.
pub fn newtonian_potential(field: &FormField, spec: &KernelSpec, eval: Option<&[usize]>) -> Result<FormField> {
    let table = KernelTable::new(field.grid(), spec)?;
    potential_with_table(field, &table, eval)
}

pub(crate) fn potential_with_table(
    field: &FormField,
    table: &KernelTable,
    eval: Option<&[usize]>,
) -> Result<FormField> {
    let (idx, data): (Vec<BasisIndex>, Vec<&[f64]>) = field.components().unzip();
    let out = table.convolve(field.grid(), &data, eval);
    FormField::from_components(field.grid(), idx.into_iter().zip(out))
}

/// Which integral of the Helmholtz representation is being formed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntegralPart {
    /// `I^δ_A`, sourced by `δ'α'`; feeds the closed component.
    Delta,
    /// `I^d_A`, sourced by `d'α'`; feeds the co-closed component.
    D,
}

/// The lattices `I_A` of one Helmholtz integral, on the region's sub-grid.
#[derive(Clone, Debug)]
pub struct HelmholtzIntegral {
    pub part: IntegralPart,
    pub grade: usize,
    pub grid: GridSpec,
    pub lattices: BTreeMap<BasisIndex, Vec<f64>>,
}

impl HelmholtzIntegral {
    /// `ω^A I_A` as a field of the source's grade.
    pub fn assemble(&self) -> FormField {
        FormField::from_components(&self.grid, self.lattices.iter().map(|(a, v)| (*a, v.clone())))
            .expect("lattices built on this grid")
    }
}

/// `I_A(x) = Σ_{x' ∈ R} [(source(x') ∧ ω'^Ā)/z'] K(x − x') V`, where
/// `ω^Ā` is the signed complement with `ω^A ∧ ω^Ā = z`. Only the `A`
/// component of the source survives the wedge, so `I_A` is the potential of
/// the source's `A` coefficient.
pub fn helmholtz_integral(
    source: &FormField,
    region: &Region,
    part: IntegralPart,
    spec: &KernelSpec,
    eval: Option<&[usize]>,
) -> Result<HelmholtzIntegral> {
    if region.is_empty() {
        return Err(Error::EmptyRegion);
    }
    let grade = source.homogeneous_grade(0)?;
    let local = source.restrict(region)?;
    let table = KernelTable::new(local.grid(), spec)?;
    integral_with_table(&local, part, grade, &table, eval)
}

pub(crate) fn integral_with_table(
    local: &FormField,
    part: IntegralPart,
    grade: usize,
    table: &KernelTable,
    eval: Option<&[usize]>,
) -> Result<HelmholtzIntegral> {
    let n = local.dim();
    let z = BasisIndex::full(n);
    let mut weighted = Vec::new();
    for (a, v) in local.components() {
        let (comp, s) = complement(a, n);
        let (top, s2) = basis_wedge(a, comp).expect("complement is disjoint");
        debug_assert_eq!(top, z);
        let sign = s * s2;
        weighted.push((a, v.iter().map(|x| sign * x).collect::<Vec<f64>>()));
    }
    let refs: Vec<&[f64]> = weighted.iter().map(|(_, v)| v.as_slice()).collect();
    let out = table.convolve(local.grid(), &refs, eval);
    Ok(HelmholtzIntegral {
        part,
        grade,
        grid: local.grid().clone(),
        lattices: weighted.iter().map(|(a, _)| *a).zip(out).collect(),
    })
}

fn scalar_only(phi: &FormField) -> Result<()> {
    if phi.grades().iter().any(|&g| g != 0) {
        return Err(Error::NotHomogeneous);
    }
    Ok(())
}

/// `c · V Σ K (∂'∂'φ)` on the region's sub-grid, evaluated at `eval`
/// (sub-grid node indices) or everywhere.
pub fn delta_reconstruct(
    phi: &FormField,
    region: &Region,
    spec: &KernelSpec,
    eval: Option<&[usize]>,
) -> Result<FormField> {
    scalar_only(phi)?;
    let local = phi.restrict(region)?;
    let lap = local.laplacian();
    let table = KernelTable::new(local.grid(), spec)?;
    Ok(potential_with_table(&lap, &table, eval)?.scale(spec.normalization))
}

/// `max |φ − reconstructed φ|` over probe nodes of the region's sub-grid.
/// Without probes, all nodes at least two cells inside the region are used.
pub fn delta_identity_residual(
    phi: &FormField,
    region: &Region,
    spec: &KernelSpec,
    probes: Option<&[usize]>,
) -> Result<f64> {
    let local = phi.restrict(region)?;
    let probes: Vec<usize> = match probes {
        Some(p) => p.to_vec(),
        None => {
            let mask = crate::grid::inner_mask(local.grid(), 2);
            (0..mask.len()).filter(|&k| mask[k]).collect()
        }
    };
    let rec = delta_reconstruct(phi, region, spec, Some(&probes))?;
    let a = local.component_or_zero(BasisIndex::SCALAR);
    let b = rec.component_or_zero(BasisIndex::SCALAR);
    Ok(probes.iter().map(|&k| (a[k] - b[k]).abs()).fold(0.0, f64::max))
}

/// Four-point Lagrange stencil `(first node, weights)` for `x` on one axis.
pub(crate) fn lagrange4(axis: &crate::grid::Axis, x: f64) -> (usize, [f64; 4]) {
    let h = axis.spacing();
    let t = (x - axis.min) / h;
    let i0 = (t.floor() as isize - 1).clamp(0, axis.points as isize - 4) as usize;
    let u = t - i0 as f64;
    let mut w = [0.0; 4];
    for (j, wj) in w.iter_mut().enumerate() {
        let mut v = 1.0;
        for k in 0..4 {
            if k != j {
                v *= (u - k as f64) / (j as f64 - k as f64);
            }
        }
        *wj = v;
    }
    (i0, w)
}

/// Reconstructed φ at arbitrary points of the region: the lattice
/// reconstruction at the surrounding `4^n` nodes, interpolated with tensor
/// four-point Lagrange weights.
pub fn delta_reconstruct_at(
    phi: &FormField,
    region: &Region,
    spec: &KernelSpec,
    points: &[Vec<f64>],
) -> Result<Vec<f64>> {
    let sub = region.sub_grid();
    let n = sub.dim();
    if sub.axes().iter().any(|a| a.points < 4) {
        return Err(Error::RegionTooThin(0));
    }
    let mut stencils = Vec::with_capacity(points.len());
    let mut needed = std::collections::BTreeSet::new();
    for x in points {
        if x.len() != n {
            return Err(Error::DimensionMismatch { left: x.len(), right: n });
        }
        let st: Vec<(usize, [f64; 4])> = sub.axes().iter().zip(x).map(|(a, &xi)| lagrange4(a, xi)).collect();
        for_each_stencil_node(&sub, &st, |node, _| {
            needed.insert(node);
        });
        stencils.push(st);
    }
    let eval: Vec<usize> = needed.into_iter().collect();
    let rec = delta_reconstruct(phi, region, spec, Some(&eval))?;
    let vals = rec.component_or_zero(BasisIndex::SCALAR);
    Ok(stencils
        .iter()
        .map(|st| {
            let mut s = 0.0;
            for_each_stencil_node(&sub, st, |node, w| s += w * vals[node]);
            s
        })
        .collect())
}

pub(crate) fn for_each_stencil_node(grid: &GridSpec, st: &[(usize, [f64; 4])], mut f: impl FnMut(usize, f64)) {
    let n = st.len();
    let mut idx = vec![0usize; n];
    loop {
        let mut w = 1.0;
        let mut m = Vec::with_capacity(n);
        for (k, (i0, ws)) in st.iter().enumerate() {
            w *= ws[idx[k]];
            m.push(i0 + idx[k]);
        }
        f(grid.index(&m), w);
        let mut k = n;
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < 4 {
                break;
            }
            idx[k] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_areas() {
        assert!((unit_sphere_area(3) - 4.0 * PI).abs() < 1e-12);
        assert!((unit_sphere_area(4) - 2.0 * PI * PI).abs() < 1e-12);
        assert!((unit_sphere_area(2) - 2.0 * PI).abs() < 1e-12);
        assert!((unit_sphere_area(3) - 12.566_370_614).abs() < 1e-8);
        assert!((unit_sphere_area(4) - 19.739_208_802).abs() < 1e-8);
    }

    #[test]
    fn kernel_values() {
        assert_eq!(kernel(2.0, 3).unwrap(), 0.5);
        assert_eq!(kernel(2.0, 5).unwrap(), 0.125);
        let e = kernel(2.0, 2).unwrap_err();
        assert!(e.to_string().contains("dimension below kernel validity"));
        assert!(normalization(3).unwrap() < 0.0);
    }

    #[test]
    fn self_cell_rules() {
        // cell averages of |y|^(2-n) over the unit cube, from a 1-D
        // Gaussian-integral representation evaluated to high precision
        let reference = [(3, 2.380_077_363_979_553), (4, 4.286_854_062_301_842), (5, 6.400_985_690_707_073)];
        for (n, want) in reference {
            let got = SelfCellRule::CubeAverage.value(&vec![1.0; n]);
            assert!((got - want).abs() < 1e-8 * want, "n = {n}: {got}");
        }
        let ball = SelfCellRule::EqualVolumeBall.value(&[1.0; 3]);
        let a = (3.0 / (4.0 * PI)).powf(1.0 / 3.0);
        assert!((ball - 1.5 / a).abs() < 1e-12);
        // scaling: all rules are homogeneous of degree 2 - n
        for rule in [SelfCellRule::EqualVolumeBall, SelfCellRule::CubeAverage, SelfCellRule::StencilConsistent] {
            let r = rule.value(&[0.5; 3]) / rule.value(&[1.0; 3]);
            assert!((r - 2.0).abs() < 1e-8, "{rule:?}: {r}");
        }
        let h = 8.0 / 31.0;
        let k0 = SelfCellRule::StencilConsistent.value(&[h; 3]) * h;
        assert!((k0 - 5.3506).abs() < 1e-3, "{k0}");
    }

    #[test]
    fn point_source() {
        let g = GridSpec::cube(3, 0.0, 4.0, 5).unwrap();
        let spec = KernelSpec::new(3, SelfCellRule::default()).unwrap();
        let mut src = FormField::zeros(&g);
        let mut data = vec![0.0; g.len()];
        data[g.index(&[0, 0, 0])] = 2.0;
        src.set_component(BasisIndex::SCALAR, data).unwrap();
        let pot = newtonian_potential(&src, &spec, None).unwrap();
        let v = pot.component(BasisIndex::SCALAR).unwrap()[g.index(&[3, 4, 0])];
        // mass 2 * cell volume 1 at distance 5
        assert!((v - 2.0 / 5.0).abs() < 1e-14);
    }

    #[test]
    fn convolution_matches_naive_sum() {
        let g = GridSpec::new(vec![
            crate::grid::Axis::new(-1.0, 1.0, 5),
            crate::grid::Axis::new(0.0, 2.0, 4),
            crate::grid::Axis::new(-0.5, 1.0, 6),
        ])
        .unwrap();
        let spec = KernelSpec::new(3, SelfCellRule::EqualVolumeBall).unwrap();
        let f = FormField::scalar_from_fn(&g, |x| (x[0] + 2.0 * x[1]).sin() + x[2]);
        let pot = newtonian_potential(&f, &spec, None).unwrap();
        let fv = f.component(BasisIndex::SCALAR).unwrap();
        let k0 = spec.self_cell.value(&g.spacings());
        let v = g.cell_volume();
        for k in 0..g.len() {
            let x = g.coordinates(k);
            let mut s = 0.0;
            for j in 0..g.len() {
                let y = g.coordinates(j);
                let r = x.iter().zip(&y).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
                s += fv[j] * v * if j == k { k0 } else { 1.0 / r };
            }
            assert!((pot.component(BasisIndex::SCALAR).unwrap()[k] - s).abs() < 1e-12 * s.abs().max(1.0));
        }
    }

    #[test]
    fn zero_source_gives_zero() {
        let g = GridSpec::cube(3, -1.0, 1.0, 5).unwrap();
        let spec = KernelSpec::new(3, SelfCellRule::default()).unwrap();
        let src = FormField::from_fn(&g, BasisIndex::axis(1), |_| 0.0);
        let r = helmholtz_integral(&src, &Region::full(&g), IntegralPart::Delta, &spec, None).unwrap();
        assert!(r.lattices.values().all(|v| v.iter().all(|x| *x == 0.0)));
    }

    #[test]
    fn lagrange_reproduces_cubics() {
        let a = crate::grid::Axis::new(-1.0, 2.0, 7);
        for x in [-0.9, 0.1, 1.25, 1.99] {
            let (i0, w) = lagrange4(&a, x);
            let s: f64 = (0..4).map(|j| w[j] * a.coordinate(i0 + j).powi(3)).sum();
            assert!((s - x * x * x).abs() < 1e-12);
        }
    }
}
