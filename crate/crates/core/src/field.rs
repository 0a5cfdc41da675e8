//! Differential forms sampled on a grid, stored as one scalar lattice per
//! basis monomial, with finite-difference `d_h`, `d`, `δ`, `∂` and `∂∂`.

use std::collections::BTreeMap;

use crate::algebra::{
    basis_left_contract, basis_product, basis_right_contract, basis_wedge, BasisIndex,
    Multivector,
};
use crate::error::{Error, Result};
use crate::grid::{inner_mask, GridSpec, Region};

#[derive(Clone, Debug, PartialEq)]
pub struct FormField {
    grid: GridSpec,
    comps: BTreeMap<BasisIndex, Vec<f64>>,
}

/// Second-order finite difference of one lattice along a 0-based axis.
/// Central at interior nodes, one-sided three-point at the two ends.
pub fn difference(grid: &GridSpec, data: &[f64], axis: usize) -> Vec<f64> {
    let p = grid.axes()[axis].points;
    let stride = grid.strides()[axis];
    let block = p * stride;
    let inv = 1.0 / (2.0 * grid.spacing(axis));
    let mut out = vec![0.0; data.len()];
    for base in (0..data.len()).step_by(block) {
        for j in 0..stride {
            let at = |k: usize| data[base + k * stride + j];
            let (f0, f1, f2) = (at(0), at(1), at(2));
            out[base + j] = (4.0 * (f1 - f0) - (f2 - f0)) * inv;
            for k in 1..p - 1 {
                out[base + k * stride + j] = (at(k + 1) - at(k - 1)) * inv;
            }
            let (g0, g1, g2) = (at(p - 1), at(p - 2), at(p - 3));
            out[base + (p - 1) * stride + j] = -(4.0 * (g1 - g0) - (g2 - g0)) * inv;
        }
    }
    out
}

fn axpy(out: &mut [f64], s: f64, x: &[f64]) {
    for (o, v) in out.iter_mut().zip(x) {
        *o += s * v;
    }
}

impl FormField {
    pub fn zeros(grid: &GridSpec) -> Self {
        FormField {
            grid: grid.clone(),
            comps: BTreeMap::new(),
        }
    }

    /// A single-component field `f(x) dx^index`.
    pub fn from_fn(grid: &GridSpec, index: BasisIndex, f: impl Fn(&[f64]) -> f64) -> Self {
        let mut out = Self::zeros(grid);
        let data = (0..grid.len()).map(|k| f(&grid.coordinates(k))).collect();
        out.comps.insert(index, data);
        out
    }

    pub fn scalar_from_fn(grid: &GridSpec, f: impl Fn(&[f64]) -> f64) -> Self {
        Self::from_fn(grid, BasisIndex::SCALAR, f)
    }

    /// The same multivector at every node.
    pub fn constant(grid: &GridSpec, value: &Multivector) -> Self {
        let mut out = Self::zeros(grid);
        for (idx, c) in value.terms() {
            out.comps.insert(idx, vec![c; grid.len()]);
        }
        out
    }

    pub fn from_components<I>(grid: &GridSpec, comps: I) -> Result<Self>
    where
        I: IntoIterator<Item = (BasisIndex, Vec<f64>)>,
    {
        let mut out = Self::zeros(grid);
        for (idx, data) in comps {
            out.set_component(idx, data)?;
        }
        Ok(out)
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn dim(&self) -> usize {
        self.grid.dim()
    }

    pub fn component(&self, index: BasisIndex) -> Option<&[f64]> {
        self.comps.get(&index).map(Vec::as_slice)
    }

    pub fn component_or_zero(&self, index: BasisIndex) -> Vec<f64> {
        self.comps
            .get(&index)
            .cloned()
            .unwrap_or_else(|| vec![0.0; self.grid.len()])
    }

    pub fn set_component(&mut self, index: BasisIndex, data: Vec<f64>) -> Result<()> {
        if !index.is_valid_for(self.dim()) {
            return Err(Error::InvalidIndex(format!(
                "{index:?} not valid for n = {}",
                self.dim()
            )));
        }
        if data.len() != self.grid.len() {
            return Err(Error::InvalidGrid(format!(
                "component has {} values, grid has {} nodes",
                data.len(),
                self.grid.len()
            )));
        }
        self.comps.insert(index, data);
        Ok(())
    }

    /// Stored components in bitmask order. Absent components are zero.
    pub fn components(&self) -> impl Iterator<Item = (BasisIndex, &[f64])> {
        self.comps.iter().map(|(i, v)| (*i, v.as_slice()))
    }

    fn entry(&mut self, index: BasisIndex) -> &mut Vec<f64> {
        let len = self.grid.len();
        self.comps.entry(index).or_insert_with(|| vec![0.0; len])
    }

    pub fn at(&self, node: usize) -> Multivector {
        let mut m = Multivector::zero(self.dim());
        for (idx, v) in &self.comps {
            m.set(*idx, v[node]);
        }
        m
    }

    /// Grades carrying a component with at least one nonzero value.
    pub fn grades(&self) -> Vec<usize> {
        let mut g: Vec<usize> = self
            .comps
            .iter()
            .filter(|(_, v)| v.iter().any(|x| *x != 0.0))
            .map(|(i, _)| i.grade())
            .collect();
        g.sort_unstable();
        g.dedup();
        g
    }

    /// The grade of a homogeneous field; the zero field reports `default`.
    pub fn homogeneous_grade(&self, default: usize) -> Result<usize> {
        match self.grades().as_slice() {
            [] => Ok(default),
            [g] => Ok(*g),
            _ => Err(Error::NotHomogeneous),
        }
    }

    pub fn grade_part(&self, k: usize) -> FormField {
        FormField {
            grid: self.grid.clone(),
            comps: self
                .comps
                .iter()
                .filter(|(i, _)| i.grade() == k)
                .map(|(i, v)| (*i, v.clone()))
                .collect(),
        }
    }

    fn check_grid(&self, other: &FormField) -> Result<()> {
        if self.grid.compatible(&other.grid) {
            Ok(())
        } else {
            Err(Error::GridMismatch)
        }
    }

    pub fn add(&self, other: &FormField) -> Result<FormField> {
        self.check_grid(other)?;
        let mut out = self.clone();
        for (idx, v) in &other.comps {
            axpy(out.entry(*idx), 1.0, v);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &FormField) -> Result<FormField> {
        self.check_grid(other)?;
        let mut out = self.clone();
        for (idx, v) in &other.comps {
            axpy(out.entry(*idx), -1.0, v);
        }
        Ok(out)
    }

    pub fn scale(&self, s: f64) -> FormField {
        let mut out = self.clone();
        for v in out.comps.values_mut() {
            v.iter_mut().for_each(|x| *x *= s);
        }
        out
    }

    pub fn eta(&self) -> FormField {
        self.map_grades(|r| if r % 2 == 0 { 1.0 } else { -1.0 })
    }

    pub fn reversion(&self) -> FormField {
        self.map_grades(|r| if (r * r.saturating_sub(1) / 2) % 2 == 0 { 1.0 } else { -1.0 })
    }

    fn map_grades(&self, sign: impl Fn(usize) -> f64) -> FormField {
        let mut out = self.clone();
        for (idx, v) in out.comps.iter_mut() {
            let s = sign(idx.grade());
            if s != 1.0 {
                v.iter_mut().for_each(|x| *x *= s);
            }
        }
        out
    }

    fn pointwise(
        &self,
        other: &FormField,
        rule: impl Fn(BasisIndex, BasisIndex) -> Option<(BasisIndex, f64)>,
    ) -> Result<FormField> {
        self.check_grid(other)?;
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        let mut out = FormField::zeros(&self.grid);
        for (a, va) in &self.comps {
            for (b, vb) in &other.comps {
                if let Some((c, s)) = rule(*a, *b) {
                    let o = out.entry(c);
                    for ((o, x), y) in o.iter_mut().zip(va).zip(vb) {
                        *o += s * x * y;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Pointwise Clifford product `u ∨ v`.
    pub fn clifford(&self, other: &FormField) -> Result<FormField> {
        self.pointwise(other, |a, b| Some(basis_product(a, b)))
    }

    /// Pointwise exterior product `u ∧ v`.
    pub fn wedge(&self, other: &FormField) -> Result<FormField> {
        self.pointwise(other, basis_wedge)
    }

    /// Pointwise `w · u` with `w` a grade-1 field.
    pub fn left_interior(w: &FormField, u: &FormField) -> Result<FormField> {
        if w.homogeneous_grade(1)? != 1 {
            return Err(Error::NotGradeOne(format!("{:?}", w.grades())));
        }
        w.pointwise(u, |h, a| basis_left_contract(h.bits().trailing_zeros() as usize + 1, a))
    }

    /// Pointwise `u · w` with `w` a grade-1 field.
    pub fn right_interior(u: &FormField, w: &FormField) -> Result<FormField> {
        if w.homogeneous_grade(1)? != 1 {
            return Err(Error::NotGradeOne(format!("{:?}", w.grades())));
        }
        u.pointwise(w, |a, h| basis_right_contract(a, h.bits().trailing_zeros() as usize + 1))
    }

    /// `u ∨ c` for a constant multivector `c`.
    pub fn right_mul_const(&self, c: &Multivector) -> Result<FormField> {
        self.clifford(&FormField::constant(&self.grid, c))
    }

    /// `c ∨ u` for a constant multivector `c`.
    pub fn left_mul_const(&self, c: &Multivector) -> Result<FormField> {
        FormField::constant(&self.grid, c).clifford(self)
    }

    /// `d_h u` along a 1-based axis `h`.
    pub fn partial_derivative(&self, axis: usize) -> Result<FormField> {
        if axis == 0 || axis > self.dim() {
            return Err(Error::AxisOutOfRange {
                axis,
                n: self.dim(),
            });
        }
        Ok(FormField {
            grid: self.grid.clone(),
            comps: self
                .comps
                .iter()
                .map(|(i, v)| (*i, difference(&self.grid, v, axis - 1)))
                .collect(),
        })
    }

    fn derivative_with(
        &self,
        rule: impl Fn(usize, BasisIndex) -> Option<(BasisIndex, f64)>,
    ) -> FormField {
        let mut out = FormField::zeros(&self.grid);
        for (a, v) in &self.comps {
            for h in 1..=self.dim() {
                if let Some((c, s)) = rule(h, *a) {
                    let dv = difference(&self.grid, v, h - 1);
                    axpy(out.entry(c), s, &dv);
                }
            }
        }
        out
    }

    /// `du = Σ_h dx^h ∧ d_h u`.
    pub fn exterior_derivative(&self) -> FormField {
        self.derivative_with(|h, a| basis_wedge(BasisIndex::axis(h), a))
    }

    /// `δu = Σ_h dx^h · d_h u`.
    pub fn interior_derivative(&self) -> FormField {
        self.derivative_with(basis_left_contract)
    }

    /// `∂u = du + δu`.
    pub fn kahler_derivative(&self) -> FormField {
        self.exterior_derivative()
            .add(&self.interior_derivative())
            .expect("same grid")
    }

    /// `∂u` computed directly as `Σ_h dx^h ∨ d_h u`.
    pub fn kahler_derivative_clifford(&self) -> FormField {
        self.derivative_with(|h, a| Some(basis_product(BasisIndex::axis(h), a)))
    }

    /// `∂∂u = δdu + dδu`.
    pub fn laplacian(&self) -> FormField {
        self.exterior_derivative()
            .interior_derivative()
            .add(&self.interior_derivative().exterior_derivative())
            .expect("same grid")
    }

    /// The field's values on a sub-box, as a field on the sub-box grid.
    pub fn restrict(&self, region: &Region) -> Result<FormField> {
        if !self.grid.compatible(region.grid()) {
            return Err(Error::GridMismatch);
        }
        let nodes = region.nodes();
        let sub = region.sub_grid();
        Ok(FormField {
            grid: sub,
            comps: self
                .comps
                .iter()
                .map(|(i, v)| (*i, nodes.iter().map(|&k| v[k]).collect()))
                .collect(),
        })
    }

    /// Copies onto a compatible grid (same nodes, possibly rounded bounds).
    pub fn with_grid(&self, grid: &GridSpec) -> Result<FormField> {
        if !self.grid.compatible(grid) {
            return Err(Error::GridMismatch);
        }
        Ok(FormField {
            grid: grid.clone(),
            comps: self.comps.clone(),
        })
    }

    /// Volume-weighted L2 norm `sqrt(Σ coeff² · V)` over nodes at least
    /// `offset` cells from every face.
    pub fn l2_norm(&self, offset: usize) -> f64 {
        self.l2_norm_mask(&inner_mask(&self.grid, offset))
    }

    /// Volume-weighted L2 norm over the nodes selected by `mask`.
    pub fn l2_norm_mask(&self, mask: &[bool]) -> f64 {
        let s: f64 = self
            .comps
            .values()
            .map(|v| v.iter().zip(mask).filter(|(_, m)| **m).fold(0.0, |a, (x, _)| a + x * x))
            .fold(0.0, |a, b| a + b);
        (s * self.grid.cell_volume()).sqrt()
    }

    /// Zeroes every node not selected by `mask`.
    pub fn masked(&self, mask: &[bool]) -> FormField {
        let mut out = self.clone();
        for v in out.comps.values_mut() {
            for (x, m) in v.iter_mut().zip(mask) {
                if !m {
                    *x = 0.0;
                }
            }
        }
        out
    }

    /// Max-abs coefficient over nodes at least `offset` cells from every face.
    pub fn max_abs(&self, offset: usize) -> f64 {
        let mask = inner_mask(&self.grid, offset);
        self.comps
            .values()
            .flat_map(|v| v.iter().zip(&mask).filter(|(_, m)| **m).map(|(x, _)| x.abs()))
            .fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.comps.values().all(|v| v.iter().all(|x| *x == 0.0))
    }
}
