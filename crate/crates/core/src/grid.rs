//! Uniform Cartesian grids and axis-aligned sub-boxes.
//!
//! Nodes are stored row-major: axis 1 varies slowest, axis n fastest.

use crate::algebra::MAX_DIM;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Axis {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl Axis {
    pub fn new(min: f64, max: f64, points: usize) -> Self {
        Axis { min, max, points }
    }

    pub fn spacing(&self) -> f64 {
        (self.max - self.min) / (self.points - 1) as f64
    }

    pub fn coordinate(&self, i: usize) -> f64 {
        if i + 1 == self.points {
            self.max
        } else {
            self.min + i as f64 * self.spacing()
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GridSpec {
    axes: Vec<Axis>,
    strides: Vec<usize>,
    len: usize,
}

impl GridSpec {
    pub fn new(axes: Vec<Axis>) -> Result<Self> {
        if axes.is_empty() || axes.len() > MAX_DIM {
            return Err(Error::InvalidGrid(format!(
                "dimension {} outside 1..={MAX_DIM}",
                axes.len()
            )));
        }
        for (i, a) in axes.iter().enumerate() {
            if !(a.min.is_finite() && a.max.is_finite()) || a.min >= a.max {
                return Err(Error::InvalidGrid(format!(
                    "axis {}: need finite min < max, got [{}, {}]",
                    i + 1,
                    a.min,
                    a.max
                )));
            }
            if a.points < 3 {
                return Err(Error::InvalidGrid(format!(
                    "axis {}: need at least 3 points, got {}",
                    i + 1,
                    a.points
                )));
            }
        }
        let mut strides = vec![1usize; axes.len()];
        for i in (0..axes.len() - 1).rev() {
            strides[i] = strides[i + 1] * axes[i + 1].points;
        }
        let len = strides[0] * axes[0].points;
        Ok(GridSpec { axes, strides, len })
    }

    /// The same `[min, max]` and point count on every axis.
    pub fn cube(n: usize, min: f64, max: f64, points: usize) -> Result<Self> {
        Self::new(vec![Axis::new(min, max, points); n])
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn axes(&self) -> &[Axis] {
        &self.axes
    }

    pub fn shape(&self) -> Vec<usize> {
        self.axes.iter().map(|a| a.points).collect()
    }

    pub fn strides(&self) -> &[usize] {
        &self.strides
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Spacing along a 0-based axis.
    pub fn spacing(&self, axis: usize) -> f64 {
        self.axes[axis].spacing()
    }

    pub fn spacings(&self) -> Vec<f64> {
        self.axes.iter().map(Axis::spacing).collect()
    }

    pub fn cell_volume(&self) -> f64 {
        self.axes.iter().map(Axis::spacing).product()
    }

    pub fn index(&self, multi: &[usize]) -> usize {
        multi.iter().zip(&self.strides).map(|(i, s)| i * s).sum()
    }

    pub fn multi_index(&self, mut node: usize) -> Vec<usize> {
        let mut out = vec![0; self.dim()];
        for (k, s) in self.strides.iter().enumerate() {
            out[k] = node / s;
            node %= s;
        }
        out
    }

    pub fn coordinates(&self, node: usize) -> Vec<f64> {
        self.multi_index(node)
            .iter()
            .zip(&self.axes)
            .map(|(&i, a)| a.coordinate(i))
            .collect()
    }

    /// Coordinate vector of each axis.
    pub fn axis_coordinates(&self) -> Vec<Vec<f64>> {
        self.axes
            .iter()
            .map(|a| (0..a.points).map(|i| a.coordinate(i)).collect())
            .collect()
    }

    /// Same grid up to floating-point noise in the axis bounds.
    pub fn compatible(&self, other: &GridSpec) -> bool {
        self.dim() == other.dim()
            && self.axes.iter().zip(&other.axes).all(|(a, b)| {
                let tol = 1e-12 * (a.max - a.min).abs().max(1.0);
                a.points == b.points && (a.min - b.min).abs() <= tol && (a.max - b.max).abs() <= tol
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeClass {
    /// All `2n` axis neighbours lie inside the sub-box.
    Interior,
    /// Inside the sub-box but on one of its faces.
    Boundary,
    Exterior,
}

/// An axis-aligned sub-box of a grid, given by inclusive index ranges.
#[derive(Clone, Debug, PartialEq)]
pub struct Region {
    grid: GridSpec,
    lo: Vec<usize>,
    hi: Vec<usize>,
}

impl Region {
    pub fn full(grid: &GridSpec) -> Self {
        Region {
            grid: grid.clone(),
            lo: vec![0; grid.dim()],
            hi: grid.axes().iter().map(|a| a.points - 1).collect(),
        }
    }

    /// `ranges[i] = (first, last)` node indices on axis `i + 1`, inclusive.
    /// Each range needs at least three nodes.
    pub fn new(grid: &GridSpec, ranges: &[(usize, usize)]) -> Result<Self> {
        if ranges.len() != grid.dim() {
            return Err(Error::InvalidRegion(format!(
                "{} ranges for a {}-dimensional grid",
                ranges.len(),
                grid.dim()
            )));
        }
        for (i, (&(a, b), ax)) in ranges.iter().zip(grid.axes()).enumerate() {
            if b >= ax.points || a > b {
                return Err(Error::InvalidRegion(format!(
                    "axis {}: range {a}:{b} outside 0:{}",
                    i + 1,
                    ax.points - 1
                )));
            }
            if b - a < 2 {
                return Err(Error::RegionTooThin(0));
            }
        }
        Ok(Region {
            grid: grid.clone(),
            lo: ranges.iter().map(|r| r.0).collect(),
            hi: ranges.iter().map(|r| r.1).collect(),
        })
    }

    /// Parses `i0:i1,j0:j1,...` (inclusive node indices, one range per axis).
    pub fn parse(grid: &GridSpec, text: &str) -> Result<Self> {
        let ranges = text
            .split(',')
            .map(|part| {
                let (a, b) = part
                    .trim()
                    .split_once(':')
                    .ok_or_else(|| Error::InvalidRegion(format!("expected i0:i1, got '{part}'")))?;
                let a = a.trim().parse::<usize>();
                let b = b.trim().parse::<usize>();
                match (a, b) {
                    (Ok(a), Ok(b)) => Ok((a, b)),
                    _ => Err(Error::InvalidRegion(format!("bad index range '{part}'"))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(grid, &ranges)
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn lo(&self) -> &[usize] {
        &self.lo
    }

    pub fn hi(&self) -> &[usize] {
        &self.hi
    }

    pub fn is_full(&self) -> bool {
        self.lo.iter().all(|&l| l == 0)
            && self.hi.iter().zip(self.grid.axes()).all(|(&h, a)| h == a.points - 1)
    }

    pub fn len(&self) -> usize {
        self.lo.iter().zip(&self.hi).map(|(l, h)| h - l + 1).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn classify(&self, node: usize) -> NodeClass {
        let m = self.grid.multi_index(node);
        let mut boundary = false;
        for ((&i, &l), &h) in m.iter().zip(&self.lo).zip(&self.hi) {
            if i < l || i > h {
                return NodeClass::Exterior;
            }
            boundary |= i == l || i == h;
        }
        if boundary {
            NodeClass::Boundary
        } else {
            NodeClass::Interior
        }
    }

    /// The sub-box as a grid of its own.
    pub fn sub_grid(&self) -> GridSpec {
        let axes = self
            .grid
            .axes()
            .iter()
            .zip(self.lo.iter().zip(&self.hi))
            .map(|(a, (&l, &h))| Axis::new(a.coordinate(l), a.coordinate(h), h - l + 1))
            .collect();
        GridSpec::new(axes).expect("region ranges validated at construction")
    }

    /// Grid node indices of the sub-box, in the sub-grid's row-major order.
    pub fn nodes(&self) -> Vec<usize> {
        let sub = self.sub_grid();
        (0..sub.len())
            .map(|k| {
                let m = sub.multi_index(k);
                let full: Vec<usize> = m.iter().zip(&self.lo).map(|(i, l)| i + l).collect();
                self.grid.index(&full)
            })
            .collect()
    }
}

/// Boolean mask over a grid's nodes: those at least `offset` cells inside
/// every face of the grid.
pub fn inner_mask(grid: &GridSpec, offset: usize) -> Vec<bool> {
    let shape = grid.shape();
    (0..grid.len())
        .map(|k| {
            grid.multi_index(k)
                .iter()
                .zip(&shape)
                .all(|(&i, &p)| i >= offset && i + offset < p)
        })
        .collect()
}

/// Trapezoid-rule weights (cell volume times ½ per face the node lies on).
pub fn trapezoid_weights(grid: &GridSpec) -> Vec<f64> {
    let shape = grid.shape();
    let v = grid.cell_volume();
    (0..grid.len())
        .map(|k| {
            grid.multi_index(k)
                .iter()
                .zip(&shape)
                .fold(v, |w, (&i, &p)| if i == 0 || i + 1 == p { w * 0.5 } else { w })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spacing_and_indexing() {
        let g = GridSpec::new(vec![Axis::new(0.0, 1.0, 3), Axis::new(-1.0, 1.0, 5)]).unwrap();
        assert_eq!(g.len(), 15);
        assert_eq!(g.spacing(0), 0.5);
        assert_eq!(g.spacing(1), 0.5);
        assert_eq!(g.cell_volume(), 0.25);
        let k = g.index(&[2, 3]);
        assert_eq!(g.multi_index(k), vec![2, 3]);
        assert_eq!(g.coordinates(k), vec![1.0, 0.5]);
    }

    #[test]
    fn rejects_bad_axes() {
        assert!(GridSpec::cube(3, 1.0, 1.0, 5).is_err());
        assert!(GridSpec::cube(3, 0.0, 1.0, 2).is_err());
        assert!(GridSpec::cube(0, 0.0, 1.0, 5).is_err());
    }

    #[test]
    fn region_classification() {
        let g = GridSpec::cube(2, 0.0, 1.0, 6).unwrap();
        let r = Region::parse(&g, "1:4, 0:3").unwrap();
        assert_eq!(r.len(), 16);
        assert_eq!(r.classify(g.index(&[2, 1])), NodeClass::Interior);
        assert_eq!(r.classify(g.index(&[1, 1])), NodeClass::Boundary);
        assert_eq!(r.classify(g.index(&[2, 0])), NodeClass::Boundary);
        assert_eq!(r.classify(g.index(&[0, 1])), NodeClass::Exterior);
        assert_eq!(r.classify(g.index(&[2, 4])), NodeClass::Exterior);
        let sub = r.sub_grid();
        assert_eq!(sub.shape(), vec![4, 4]);
        assert!((sub.axes()[0].min - 0.2).abs() < 1e-15);
        assert_eq!(r.nodes()[0], g.index(&[1, 0]));
    }

    #[test]
    fn region_errors() {
        let g = GridSpec::cube(2, 0.0, 1.0, 6).unwrap();
        assert!(Region::parse(&g, "0:9,0:3").is_err());
        assert!(Region::parse(&g, "0:1,0:3").is_err());
        assert!(Region::parse(&g, "0:3").is_err());
        assert!(Region::parse(&g, "a:b,0:3").is_err());
    }

    #[test]
    fn trapezoid_weights_sum_to_volume() {
        let g = GridSpec::new(vec![Axis::new(0.0, 2.0, 5), Axis::new(0.0, 3.0, 7)]).unwrap();
        let s: f64 = trapezoid_weights(&g).iter().sum();
        assert!((s - 6.0).abs() < 1e-14);
    }
}
