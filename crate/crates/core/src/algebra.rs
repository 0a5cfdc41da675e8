//! Pointwise Kähler algebra: the Clifford algebra of differentials `dx^i`
//! over an orthonormal Cartesian frame, `dx^i dx^j + dx^j dx^i = 2 δ^ij`.
//!
//! Basis monomials are stored as bitmasks (bit `i - 1` set when `dx^i` is a
//! factor), so canonical ordering is implicit and every product sign is an
//! integer computation. Only the coefficients are floating point.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Largest supported dimension (`2^16` components per multivector).
pub const MAX_DIM: usize = 16;

/// A basis monomial `dx^A` with `A` a strictly increasing set of axes in `1..=n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BasisIndex(u32);

impl BasisIndex {
    /// The scalar unit (empty index set).
    pub const SCALAR: BasisIndex = BasisIndex(0);

    /// Builds an index from 1-based axes, which must be strictly increasing.
    pub fn from_axes(axes: &[usize], n: usize) -> Result<Self> {
        let mut bits = 0u32;
        let mut last = 0usize;
        for &a in axes {
            if a == 0 || a > n || a > MAX_DIM {
                return Err(Error::InvalidIndex(format!("axis {a} outside 1..={n}")));
            }
            if a <= last {
                return Err(Error::InvalidIndex(format!(
                    "axes {axes:?} are not strictly increasing"
                )));
            }
            last = a;
            bits |= 1 << (a - 1);
        }
        Ok(BasisIndex(bits))
    }

    pub const fn from_bits(bits: u32) -> Self {
        BasisIndex(bits)
    }

    /// `dx^axis` for a 1-based axis.
    pub fn axis(axis: usize) -> Self {
        debug_assert!(axis >= 1 && axis <= MAX_DIM);
        BasisIndex(1 << (axis - 1))
    }

    /// The full index `{1..n}`, i.e. the unit n-form.
    pub fn full(n: usize) -> Self {
        BasisIndex(if n >= 32 { u32::MAX } else { (1u32 << n) - 1 })
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    pub const fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn contains(self, axis: usize) -> bool {
        axis >= 1 && self.0 & (1 << (axis - 1)) != 0
    }

    pub fn is_valid_for(self, n: usize) -> bool {
        self.0 & !Self::full(n).0 == 0
    }

    /// Axes in increasing order, 1-based.
    pub fn axes(self) -> Vec<usize> {
        (0..32).filter(|b| self.0 & (1 << b) != 0).map(|b| b + 1).collect()
    }

    /// Label used by field files and component tables: `0` for the scalar,
    /// a digit string such as `13` otherwise; dot-separated once `n >= 10`.
    pub fn label(self, n: usize) -> String {
        if self.0 == 0 {
            return "0".to_string();
        }
        let axes = self.axes();
        let parts: Vec<String> = axes.iter().map(|a| a.to_string()).collect();
        if n >= 10 {
            parts.join(".")
        } else {
            parts.concat()
        }
    }

    /// Inverse of [`BasisIndex::label`].
    pub fn parse_label(label: &str, n: usize) -> Result<Self> {
        let label = label.trim();
        if label == "0" {
            return Ok(Self::SCALAR);
        }
        let axes: Vec<usize> = if n >= 10 || label.contains('.') {
            label
                .split('.')
                .map(|p| p.parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::InvalidIndex(format!("bad basis label '{label}'")))?
        } else {
            label
                .chars()
                .map(|c| c.to_digit(10).map(|d| d as usize))
                .collect::<Option<_>>()
                .ok_or_else(|| Error::InvalidIndex(format!("bad basis label '{label}'")))?
        };
        if axes.is_empty() {
            return Err(Error::InvalidIndex("empty basis label".into()));
        }
        Self::from_axes(&axes, n)
    }

    /// All `2^n` basis indices ordered by grade, then lexicographically.
    pub fn all(n: usize) -> Vec<BasisIndex> {
        (0..=n).flat_map(|k| Self::of_grade(n, k)).collect()
    }

    /// Basis indices of grade `k` in lexicographic order of their axes.
    pub fn of_grade(n: usize, k: usize) -> Vec<BasisIndex> {
        let mut out: Vec<BasisIndex> = (0..1u32 << n)
            .filter(|b| b.count_ones() as usize == k)
            .map(BasisIndex)
            .collect();
        out.sort_by_key(|b| b.axes());
        out
    }
}

impl fmt::Debug for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            write!(f, "1")
        } else {
            write!(f, "dx{:?}", self.axes())
        }
    }
}

/// Sign of reordering the concatenation `A ++ B` into canonical order,
/// counted as the parity of pairs `(a in A, b in B)` with `a > b`.
#[inline]
pub fn reorder_sign(a: u32, b: u32) -> f64 {
    let mut a = a >> 1;
    let mut swaps = 0u32;
    while a != 0 {
        swaps += (a & b).count_ones();
        a >>= 1;
    }
    if swaps & 1 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Clifford product of two basis monomials: repeated generators square to +1.
#[inline]
pub fn basis_product(a: BasisIndex, b: BasisIndex) -> (BasisIndex, f64) {
    (BasisIndex(a.0 ^ b.0), reorder_sign(a.0, b.0))
}

/// Exterior product of two basis monomials, `None` when they share an axis.
#[inline]
pub fn basis_wedge(a: BasisIndex, b: BasisIndex) -> Option<(BasisIndex, f64)> {
    (a.0 & b.0 == 0).then(|| (BasisIndex(a.0 | b.0), reorder_sign(a.0, b.0)))
}

/// `dx^h · dx^A`: removes `h` from `A` when present.
#[inline]
pub fn basis_left_contract(h: usize, a: BasisIndex) -> Option<(BasisIndex, f64)> {
    let e = 1u32 << (h - 1);
    (a.0 & e != 0).then(|| (BasisIndex(a.0 ^ e), reorder_sign(e, a.0)))
}

/// `dx^A · dx^h`: removes `h` from `A` when present.
#[inline]
pub fn basis_right_contract(a: BasisIndex, h: usize) -> Option<(BasisIndex, f64)> {
    let e = 1u32 << (h - 1);
    (a.0 & e != 0).then(|| (BasisIndex(a.0 ^ e), reorder_sign(a.0, e)))
}

/// The complement `Ā = {1..n} \ A` with the sign `s` such that
/// `dx^A ∧ (s dx^Ā) = z` exactly.
pub fn complement(a: BasisIndex, n: usize) -> (BasisIndex, f64) {
    let comp = BasisIndex(BasisIndex::full(n).0 & !a.0);
    (comp, reorder_sign(a.0, comp.0))
}

/// An element of the Kähler algebra at a point, stored densely over all
/// `2^n` basis monomials.
#[derive(Clone, PartialEq)]
pub struct Multivector {
    n: usize,
    coeffs: Vec<f64>,
}

impl Multivector {
    pub fn zero(n: usize) -> Self {
        assert!(n <= MAX_DIM, "dimension {n} exceeds {MAX_DIM}");
        Multivector {
            n,
            coeffs: vec![0.0; 1 << n],
        }
    }

    pub fn scalar(n: usize, value: f64) -> Self {
        let mut m = Self::zero(n);
        m.coeffs[0] = value;
        m
    }

    pub fn basis(n: usize, index: BasisIndex) -> Self {
        let mut m = Self::zero(n);
        m.set(index, 1.0);
        m
    }

    /// `dx^axis` (1-based).
    pub fn differential(n: usize, axis: usize) -> Self {
        Self::basis(n, BasisIndex::axis(axis))
    }

    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (BasisIndex, f64)>,
    {
        let mut m = Self::zero(n);
        for (idx, c) in terms {
            if !idx.is_valid_for(n) {
                return Err(Error::InvalidIndex(format!("{idx:?} not valid for n = {n}")));
            }
            m.coeffs[idx.0 as usize] += c;
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, index: BasisIndex) -> f64 {
        self.coeffs.get(index.0 as usize).copied().unwrap_or(0.0)
    }

    /// # Panics
    /// If `index` is not valid for this dimension.
    pub fn set(&mut self, index: BasisIndex, value: f64) {
        assert!(index.is_valid_for(self.n), "{index:?} invalid for n = {}", self.n);
        self.coeffs[index.0 as usize] = value;
    }

    /// Nonzero terms in bitmask order.
    pub fn terms(&self) -> impl Iterator<Item = (BasisIndex, f64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0.0)
            .map(|(i, c)| (BasisIndex(i as u32), *c))
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn scalar_part(&self) -> f64 {
        self.coeffs[0]
    }

    pub fn grade_part(&self, k: usize) -> Multivector {
        let mut out = Self::zero(self.n);
        for (i, c) in self.coeffs.iter().enumerate() {
            if (i as u32).count_ones() as usize == k {
                out.coeffs[i] = *c;
            }
        }
        out
    }

    /// The single grade carrying nonzero coefficients; `None` when mixed.
    /// The zero multivector reports grade 0.
    pub fn homogeneous_grade(&self) -> Option<usize> {
        let mut grade = None;
        for (idx, _) in self.terms() {
            match grade {
                None => grade = Some(idx.grade()),
                Some(g) if g != idx.grade() => return None,
                _ => {}
            }
        }
        Some(grade.unwrap_or(0))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == 0.0)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn max_abs_diff(&self, other: &Multivector) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    fn check_dims(&self, other: &Multivector) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    fn bilinear(
        &self,
        other: &Multivector,
        rule: impl Fn(BasisIndex, BasisIndex) -> Option<(BasisIndex, f64)>,
    ) -> Result<Multivector> {
        self.check_dims(other)?;
        let mut out = Self::zero(self.n);
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                if let Some((c, s)) = rule(a, b) {
                    out.coeffs[c.0 as usize] += s * ca * cb;
                }
            }
        }
        Ok(out)
    }

    /// Clifford product `u ∨ v`.
    pub fn clifford(&self, other: &Multivector) -> Result<Multivector> {
        self.bilinear(other, |a, b| Some(basis_product(a, b)))
    }

    /// Exterior product `u ∧ v`.
    pub fn wedge(&self, other: &Multivector) -> Result<Multivector> {
        self.bilinear(other, basis_wedge)
    }

    /// `w · u` for a grade-1 `w`: the grade-lowering part of `w ∨ u`.
    pub fn left_interior(w: &Multivector, u: &Multivector) -> Result<Multivector> {
        w.check_dims(u)?;
        Self::require_grade_one(w)?;
        let mut out = Self::zero(u.n);
        for (h, ch) in w.terms() {
            let axis = h.0.trailing_zeros() as usize + 1;
            for (a, ca) in u.terms() {
                if let Some((c, s)) = basis_left_contract(axis, a) {
                    out.coeffs[c.0 as usize] += s * ch * ca;
                }
            }
        }
        Ok(out)
    }

    /// `u · w` for a grade-1 `w`: the grade-lowering part of `u ∨ w`.
    pub fn right_interior(u: &Multivector, w: &Multivector) -> Result<Multivector> {
        u.check_dims(w)?;
        Self::require_grade_one(w)?;
        let mut out = Self::zero(u.n);
        for (h, ch) in w.terms() {
            let axis = h.0.trailing_zeros() as usize + 1;
            for (a, ca) in u.terms() {
                if let Some((c, s)) = basis_right_contract(a, axis) {
                    out.coeffs[c.0 as usize] += s * ch * ca;
                }
            }
        }
        Ok(out)
    }

    fn require_grade_one(w: &Multivector) -> Result<()> {
        match w.homogeneous_grade() {
            Some(1) => Ok(()),
            _ if w.is_zero() => Ok(()),
            g => Err(Error::NotGradeOne(format!("{g:?}"))),
        }
    }

    /// `η`: scales the grade-r part by `(-1)^r`.
    pub fn eta(&self) -> Multivector {
        self.map_by_grade(|r| if r % 2 == 0 { 1.0 } else { -1.0 })
    }

    /// `ζ`: reversion, scales the grade-r part by `(-1)^(r(r-1)/2)`.
    pub fn reversion(&self) -> Multivector {
        self.map_by_grade(|r| if (r * r.saturating_sub(1) / 2) % 2 == 0 { 1.0 } else { -1.0 })
    }

    fn map_by_grade(&self, sign: impl Fn(usize) -> f64) -> Multivector {
        let mut out = self.clone();
        for (i, c) in out.coeffs.iter_mut().enumerate() {
            *c *= sign((i as u32).count_ones() as usize);
        }
        out
    }

    pub fn scaled(&self, s: f64) -> Multivector {
        let mut out = self.clone();
        out.coeffs.iter_mut().for_each(|c| *c *= s);
        out
    }
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .terms()
            .map(|(i, c)| format!("{c}*{}", i.label(self.n)))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// The unit n-form `z = dx^1 ∧ ... ∧ dx^n`.
pub fn unit_n_form(n: usize) -> Multivector {
    Multivector::basis(n, BasisIndex::full(n))
}

impl Add for &Multivector {
    type Output = Multivector;
    fn add(self, rhs: &Multivector) -> Multivector {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&Multivector> for Multivector {
    fn add_assign(&mut self, rhs: &Multivector) {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl Sub for &Multivector {
    type Output = Multivector;
    fn sub(self, rhs: &Multivector) -> Multivector {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
        out
    }
}

impl Neg for &Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self.scaled(-1.0)
    }
}

impl Mul<f64> for &Multivector {
    type Output = Multivector;
    fn mul(self, rhs: f64) -> Multivector {
        self.scaled(rhs)
    }
}
