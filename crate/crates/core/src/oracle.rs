//! Brute-force reference for basis-monomial products.
//!
//! Works on explicit index lists: concatenate, bubble-sort while counting
//! transpositions, then cancel adjacent equal pairs. Deliberately shares no
//! code with the bitmask implementation in [`crate::algebra`].

use crate::algebra::{BasisIndex, Multivector};

/// Sorts `list` in place by adjacent swaps and returns the swap count.
fn bubble_sort(list: &mut [usize]) -> usize {
    let mut swaps = 0;
    for end in (1..list.len()).rev() {
        for i in 0..end {
            if list[i] > list[i + 1] {
                list.swap(i, i + 1);
                swaps += 1;
            }
        }
    }
    swaps
}

fn sign_of(swaps: usize) -> f64 {
    if swaps % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Clifford product of `dx^a dx^b` for explicit increasing axis lists.
pub fn clifford(a: &[usize], b: &[usize]) -> (Vec<usize>, f64) {
    let mut list: Vec<usize> = a.iter().chain(b).copied().collect();
    let swaps = bubble_sort(&mut list);
    let mut out = Vec::with_capacity(list.len());
    let mut i = 0;
    while i < list.len() {
        if i + 1 < list.len() && list[i] == list[i + 1] {
            i += 2;
        } else {
            out.push(list[i]);
            i += 1;
        }
    }
    (out, sign_of(swaps))
}

/// Exterior product, `None` when an axis repeats.
pub fn exterior(a: &[usize], b: &[usize]) -> Option<(Vec<usize>, f64)> {
    if a.iter().any(|x| b.contains(x)) {
        return None;
    }
    let mut list: Vec<usize> = a.iter().chain(b).copied().collect();
    let swaps = bubble_sort(&mut list);
    Some((list, sign_of(swaps)))
}

/// `dx^h · dx^a`: move `h` next to its partner in `a` and delete both.
pub fn left_interior(h: usize, a: &[usize]) -> Option<(Vec<usize>, f64)> {
    let pos = a.iter().position(|&x| x == h)?;
    let mut rest = a.to_vec();
    rest.remove(pos);
    Some((rest, sign_of(pos)))
}

/// `dx^a · dx^h`.
pub fn right_interior(a: &[usize], h: usize) -> Option<(Vec<usize>, f64)> {
    let pos = a.iter().position(|&x| x == h)?;
    let mut rest = a.to_vec();
    rest.remove(pos);
    Some((rest, sign_of(a.len() - 1 - pos)))
}

/// Reversion sign of a monomial: reverse the list and bubble-sort it back.
pub fn reversion_sign(a: &[usize]) -> f64 {
    let mut list: Vec<usize> = a.iter().rev().copied().collect();
    sign_of(bubble_sort(&mut list))
}

/// Complement list and the sign making `a ∧ (s · comp) = z`.
pub fn complement(a: &[usize], n: usize) -> (Vec<usize>, f64) {
    let comp: Vec<usize> = (1..=n).filter(|x| !a.contains(x)).collect();
    let (_, s) = exterior(a, &comp).expect("complement is disjoint");
    (comp, s)
}

/// Mismatch counts from an exhaustive comparison at one dimension.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OracleReport {
    pub n: usize,
    pub comparisons: usize,
    pub clifford: usize,
    pub exterior: usize,
    pub interior: usize,
    pub reversion: usize,
    pub complement: usize,
}

impl OracleReport {
    pub fn mismatches(&self) -> usize {
        self.clifford + self.exterior + self.interior + self.reversion + self.complement
    }
}

fn as_single(m: &Multivector) -> Option<(Vec<usize>, f64)> {
    let mut terms = m.terms();
    let first = terms.next();
    if terms.next().is_some() {
        return None;
    }
    first.map(|(i, c)| (i.axes(), c))
}

/// Compares every algebra operation on every basis pair against the oracle.
pub fn check_dimension(n: usize) -> OracleReport {
    let mut rep = OracleReport {
        n,
        ..Default::default()
    };
    let basis = BasisIndex::all(n);
    for &a in &basis {
        let ma = Multivector::basis(n, a);
        let la = a.axes();

        rep.comparisons += 2;
        let rev = ma.reversion();
        if as_single(&rev) != Some((la.clone(), reversion_sign(&la))) {
            rep.reversion += 1;
        }
        let (comp, s) = crate::algebra::complement(a, n);
        let (ocomp, os) = complement(&la, n);
        let wedge = ma
            .wedge(&Multivector::basis(n, comp).scaled(s))
            .expect("same dimension");
        if comp.axes() != ocomp || s != os || wedge != crate::algebra::unit_n_form(n) {
            rep.complement += 1;
        }

        for &b in &basis {
            let mb = Multivector::basis(n, b);
            let lb = b.axes();
            rep.comparisons += 2;
            let prod = ma.clifford(&mb).expect("same dimension");
            if as_single(&prod) != Some(clifford(&la, &lb)) {
                rep.clifford += 1;
            }
            let w = ma.wedge(&mb).expect("same dimension");
            let ok = match exterior(&la, &lb) {
                None => w.is_zero(),
                Some(t) => as_single(&w) == Some(t),
            };
            if !ok {
                rep.exterior += 1;
            }
        }

        for h in 1..=n {
            let dh = Multivector::differential(n, h);
            rep.comparisons += 2;
            let l = Multivector::left_interior(&dh, &ma).expect("grade one");
            let ok = match left_interior(h, &la) {
                None => l.is_zero(),
                Some(t) => as_single(&l) == Some(t),
            };
            let r = Multivector::right_interior(&ma, &dh).expect("grade one");
            let ok_r = match right_interior(&la, h) {
                None => r.is_zero(),
                Some(t) => as_single(&r) == Some(t),
            };
            rep.interior += usize::from(!ok) + usize::from(!ok_r);
        }
    }
    rep
}
