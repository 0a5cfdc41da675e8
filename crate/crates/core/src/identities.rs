//! Residuals of the differential identities of the calculus, evaluated with
//! the discrete operators of [`crate::field`].

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::algebra::{unit_n_form, BasisIndex, Multivector};
use crate::error::{Error, Result};
use crate::field::FormField;
use crate::grid::GridSpec;

/// One identity `lhs = rhs`: max-abs residual and max-abs size of the sides,
/// both over nodes at the chosen offset from the boundary.
#[derive(Clone, Debug, PartialEq)]
pub struct Residual {
    pub name: String,
    pub residual: f64,
    pub scale: f64,
}

impl Residual {
    pub fn new(name: impl Into<String>, lhs: &FormField, rhs: &FormField, offset: usize) -> Result<Self> {
        let diff = lhs.sub(rhs)?;
        Ok(Residual {
            name: name.into(),
            residual: diff.max_abs(offset),
            scale: lhs.max_abs(offset).max(rhs.max_abs(offset)),
        })
    }

    /// Residual relative to the scale, or the bare residual when both sides vanish.
    pub fn relative(&self) -> f64 {
        if self.scale > 0.0 {
            self.residual / self.scale
        } else {
            self.residual
        }
    }
}

fn zero(u: &FormField) -> FormField {
    FormField::zeros(u.grid())
}

/// `dd = 0`, `δδ = 0`, `∂∂ = δd + dδ`, `∂ = Σ dx^h ∨ d_h`, the duality
/// relations with the unit n-form, and the constant-differential rules for a
/// constant `c` and a scalar field `f`.
pub fn exact_identities(u: &FormField, c: &Multivector, f: &FormField, offset: usize) -> Result<Vec<Residual>> {
    if f.grades().iter().any(|&g| g != 0) {
        return Err(Error::NotHomogeneous);
    }
    let n = u.dim();
    let z = unit_n_form(n);
    let du = u.exterior_derivative();
    let deltau = u.interior_derivative();
    let mut out = vec![
        Residual::new("dd", &du.exterior_derivative(), &zero(u), offset)?,
        Residual::new("delta-delta", &deltau.interior_derivative(), &zero(u), offset)?,
        Residual::new(
            "partial-partial",
            &u.kahler_derivative().kahler_derivative(),
            &u.laplacian(),
            offset,
        )?,
        Residual::new("partial-split", &u.kahler_derivative(), &u.kahler_derivative_clifford(), offset)?,
    ];
    let uz = u.right_mul_const(&z)?;
    out.push(Residual::new("duality-d", &du.right_mul_const(&z)?, &uz.interior_derivative(), offset)?);
    out.push(Residual::new("duality-delta", &deltau.right_mul_const(&z)?, &uz.exterior_derivative(), offset)?);
    if n % 2 == 1 {
        out.push(Residual::new("duality-d-left", &du.left_mul_const(&z)?, &uz.interior_derivative(), offset)?);
        out.push(Residual::new(
            "duality-delta-left",
            &deltau.left_mul_const(&z)?,
            &uz.exterior_derivative(),
            offset,
        )?);
    }
    out.push(Residual::new(
        "constant-right",
        &u.right_mul_const(c)?.kahler_derivative(),
        &u.kahler_derivative().right_mul_const(c)?,
        offset,
    )?);
    let cf = f.left_mul_const(c)?;
    let df = f.exterior_derivative();
    let eta_c = FormField::constant(f.grid(), &c.eta());
    let rhs = FormField::right_interior(&eta_c, &df)?.scale(-1.0);
    out.push(Residual::new("constant-interior", &cf.interior_derivative(), &rhs, offset)?);
    Ok(out)
}

/// `max |∂(c ∨ u) − c ∨ ∂u|` for `c = dx^1` and `u = x^2` (n ≥ 2): the
/// left-constant rule fails, unlike the right-constant one.
pub fn left_constant_gap(grid: &GridSpec) -> Result<f64> {
    if grid.dim() < 2 {
        return Err(Error::InvalidGrid("need n >= 2".into()));
    }
    let n = grid.dim();
    let c = Multivector::differential(n, 1);
    let u = FormField::scalar_from_fn(grid, |x| x[1]);
    let lhs = u.left_mul_const(&c)?.kahler_derivative();
    let rhs = u.kahler_derivative().left_mul_const(&c)?;
    Ok(lhs.sub(&rhs)?.max_abs(1))
}

/// Residuals of the product rules: the Leibniz rule for `d_h` and the six
/// rules for `∂, d, δ` of `u ∨ v` and `u ∧ v`, with `e^h w = dx^h · w`.
pub fn verify_product_rules(u: &FormField, v: &FormField, offset: usize) -> Result<Vec<Residual>> {
    if !u.grid().compatible(v.grid()) {
        return Err(Error::GridMismatch);
    }
    let n = u.dim();
    let uv = u.clifford(v)?;
    let uwv = u.wedge(v)?;
    let eta_u = u.eta();

    let mut leibniz = Residual {
        name: "leibniz".into(),
        residual: 0.0,
        scale: 0.0,
    };
    let mut e_u_dv = zero(u);
    let mut e_u_dv_w = zero(u);
    let mut du_e_v = zero(u);
    let mut du_e_v_w = zero(u);
    for h in 1..=n {
        let duh = u.partial_derivative(h)?;
        let dvh = v.partial_derivative(h)?;
        let lhs = uv.partial_derivative(h)?;
        let rhs = duh.clifford(v)?.add(&u.clifford(&dvh)?)?;
        let r = Residual::new("leibniz", &lhs, &rhs, offset)?;
        leibniz.residual = leibniz.residual.max(r.residual);
        leibniz.scale = leibniz.scale.max(r.scale);

        let dxh = FormField::constant(u.grid(), &Multivector::differential(n, h));
        let eu = FormField::left_interior(&dxh, u)?;
        let ev = FormField::left_interior(&dxh, v)?;
        let eta_duh = duh.eta();
        e_u_dv = e_u_dv.add(&eu.clifford(&dvh)?)?;
        e_u_dv_w = e_u_dv_w.add(&eu.wedge(&dvh)?)?;
        du_e_v = du_e_v.add(&eta_duh.clifford(&ev)?)?;
        du_e_v_w = du_e_v_w.add(&eta_duh.wedge(&ev)?)?;
    }

    let (pu, pv) = (u.kahler_derivative(), v.kahler_derivative());
    let (du, dv) = (u.exterior_derivative(), v.exterior_derivative());
    let (deu, dev) = (u.interior_derivative(), v.interior_derivative());

    let r13 = pu.clifford(v)?.add(&eta_u.clifford(&pv)?)?.add(&e_u_dv.scale(2.0))?;
    let r14 = du
        .clifford(v)?
        .add(&eta_u.clifford(&dv)?)?
        .add(&e_u_dv)?
        .sub(&du_e_v)?;
    let r15 = deu
        .clifford(v)?
        .add(&eta_u.clifford(&dev)?)?
        .add(&e_u_dv)?
        .add(&du_e_v)?;
    let r16 = pu
        .wedge(v)?
        .add(&eta_u.wedge(&pv)?)?
        .add(&e_u_dv_w)?
        .add(&du_e_v_w)?;
    let r17 = du.wedge(v)?.add(&eta_u.wedge(&dv)?)?;
    let r18 = deu
        .wedge(v)?
        .add(&eta_u.wedge(&dev)?)?
        .add(&e_u_dv_w)?
        .add(&du_e_v_w)?;

    Ok(vec![
        leibniz,
        Residual::new("kahler-clifford", &uv.kahler_derivative(), &r13, offset)?,
        Residual::new("exterior-clifford", &uv.exterior_derivative(), &r14, offset)?,
        Residual::new("interior-clifford", &uv.interior_derivative(), &r15, offset)?,
        Residual::new("kahler-wedge", &uwv.kahler_derivative(), &r16, offset)?,
        Residual::new("exterior-wedge", &uwv.exterior_derivative(), &r17, offset)?,
        Residual::new("interior-wedge", &uwv.interior_derivative(), &r18, offset)?,
    ])
}

/// The pointwise algebraic content of the product rules: with random
/// multivectors standing in for `u, v` and their partials, both sides agree
/// to rounding. Returns the largest residual over all seven rules.
pub fn algebraic_product_rule_gap(u: &Multivector, v: &Multivector, du: &[Multivector], dv: &[Multivector]) -> Result<f64> {
    let n = u.dim();
    let mut worst: f64 = 0.0;
    let sum = |terms: Vec<Multivector>| terms.iter().fold(Multivector::zero(n), |a, b| &a + b);
    let dx = |h: usize| Multivector::differential(n, h + 1);
    let d_of = |ps: &[Multivector], kind: u8| -> Result<Multivector> {
        let mut acc = Multivector::zero(n);
        for (h, p) in ps.iter().enumerate() {
            acc += &match kind {
                0 => dx(h).clifford(p)?,
                1 => dx(h).wedge(p)?,
                _ => Multivector::left_interior(&dx(h), p)?,
            };
        }
        Ok(acc)
    };
    let mut d_uv = Vec::new();
    let mut d_uwv = Vec::new();
    let mut e_u_dv = Vec::new();
    let mut e_u_dv_w = Vec::new();
    let mut du_e_v = Vec::new();
    let mut du_e_v_w = Vec::new();
    for h in 0..n {
        d_uv.push(&du[h].clifford(v)? + &u.clifford(&dv[h])?);
        d_uwv.push(&du[h].wedge(v)? + &u.wedge(&dv[h])?);
        let eu = Multivector::left_interior(&dx(h), u)?;
        let ev = Multivector::left_interior(&dx(h), v)?;
        e_u_dv.push(eu.clifford(&dv[h])?);
        e_u_dv_w.push(eu.wedge(&dv[h])?);
        du_e_v.push(du[h].eta().clifford(&ev)?);
        du_e_v_w.push(du[h].eta().wedge(&ev)?);
    }
    let (e_u_dv, e_u_dv_w, du_e_v, du_e_v_w) = (sum(e_u_dv), sum(e_u_dv_w), sum(du_e_v), sum(du_e_v_w));
    let (pu, pv) = (d_of(du, 0)?, d_of(dv, 0)?);
    let (xu, xv) = (d_of(du, 1)?, d_of(dv, 1)?);
    let (iu, iv) = (d_of(du, 2)?, d_of(dv, 2)?);
    let eu = u.eta();
    let checks = [
        (d_of(&d_uv, 0)?, &(&pu.clifford(v)? + &eu.clifford(&pv)?) + &e_u_dv.scaled(2.0)),
        (
            d_of(&d_uv, 1)?,
            &(&(&xu.clifford(v)? + &eu.clifford(&xv)?) + &e_u_dv) - &du_e_v,
        ),
        (
            d_of(&d_uv, 2)?,
            &(&(&iu.clifford(v)? + &eu.clifford(&iv)?) + &e_u_dv) + &du_e_v,
        ),
        (
            d_of(&d_uwv, 0)?,
            &(&(&pu.wedge(v)? + &eu.wedge(&pv)?) + &e_u_dv_w) + &du_e_v_w,
        ),
        (d_of(&d_uwv, 1)?, &xu.wedge(v)? + &eu.wedge(&xv)?),
        (
            d_of(&d_uwv, 2)?,
            &(&(&iu.wedge(v)? + &eu.wedge(&iv)?) + &e_u_dv_w) + &du_e_v_w,
        ),
    ];
    for (lhs, rhs) in checks.iter() {
        worst = worst.max(lhs.max_abs_diff(rhs));
    }
    Ok(worst)
}

/// A field with every basis component set to a random quadratic times a
/// Gaussian of random width, reproducible from `seed`.
pub fn random_field(grid: &GridSpec, seed: u64) -> FormField {
    let n = grid.dim();
    let mut rng = StdRng::seed_from_u64(seed);
    let comps: Vec<(BasisIndex, Vec<f64>)> = BasisIndex::all(n)
        .into_iter()
        .map(|idx| {
            let c0: f64 = rng.gen_range(-1.0..1.0);
            let lin: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let quad: Vec<f64> = (0..n).map(|_| rng.gen_range(-0.5..0.5)).collect();
            let width: f64 = rng.gen_range(0.5..1.5);
            let centre: Vec<f64> = (0..n).map(|_| rng.gen_range(-0.3..0.3)).collect();
            let data = (0..grid.len())
                .map(|k| {
                    let x = grid.coordinates(k);
                    let mut p = c0;
                    let mut r2 = 0.0;
                    for i in 0..n {
                        p += lin[i] * x[i] + quad[i] * x[i] * x[(i + 1) % n];
                        r2 += (x[i] - centre[i]).powi(2);
                    }
                    p * (-r2 / width).exp()
                })
                .collect();
            (idx, data)
        })
        .collect();
    FormField::from_components(grid, comps).expect("indices are valid for the grid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_fields_have_no_product_rule_residual() {
        let g = GridSpec::cube(3, -1.0, 1.0, 7).unwrap();
        let u = FormField::from_fn(&g, BasisIndex::axis(1), |x| 1.0 + x[1])
            .add(&FormField::scalar_from_fn(&g, |x| 2.0 - x[2]))
            .unwrap();
        let v = FormField::from_fn(&g, BasisIndex::from_axes(&[2, 3], 3).unwrap(), |x| x[0] - 0.5)
            .add(&FormField::from_fn(&g, BasisIndex::axis(3), |x| 3.0 * x[1]))
            .unwrap();
        for r in verify_product_rules(&u, &v, 1).unwrap() {
            assert!(r.residual < 1e-12, "{r:?}");
        }
    }

    #[test]
    fn product_rules_are_second_order() {
        let coarse = GridSpec::cube(3, -3.0, 3.0, 25).unwrap();
        let fine = GridSpec::cube(3, -3.0, 3.0, 49).unwrap();
        let res = |g: &GridSpec| verify_product_rules(&crate::suites::gaussian_field(g, 0.0), &crate::suites::gaussian_field(g, 5.0), 1).unwrap();
        for (a, b) in res(&coarse).iter().zip(res(&fine)) {
            let ratio = a.residual / b.residual;
            assert!((3.5..=4.5).contains(&ratio), "{}: {ratio}", a.name);
        }
    }

    #[test]
    fn exact_identities_hold() {
        for n in [3, 4] {
            let g = GridSpec::cube(n, -2.0, 2.0, 9).unwrap();
            let u = crate::suites::gaussian_field(&g, 1.0);
            let f = FormField::scalar_from_fn(&g, |x| (x[0] - x[1] * x[1]).sin());
            let c = Multivector::from_terms(n, [(BasisIndex::axis(2), 1.5), (BasisIndex::full(n), -0.5)]).unwrap();
            for r in exact_identities(&u, &c, &f, 1).unwrap() {
                assert!(r.residual <= 1e-12 * r.scale.max(1.0), "n = {n}: {r:?}");
            }
        }
    }

    #[test]
    fn random_fields_are_reproducible() {
        let g = GridSpec::cube(3, -1.0, 1.0, 5).unwrap();
        assert_eq!(random_field(&g, 7), random_field(&g, 7));
        assert_ne!(random_field(&g, 7), random_field(&g, 8));
        assert_eq!(random_field(&g, 7).components().count(), 8);
    }

    #[test]
    fn left_constant_rule_fails() {
        let g = GridSpec::cube(3, -1.0, 1.0, 5).unwrap();
        assert!((left_constant_gap(&g).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn product_rules_algebraic() {
        let n = 3;
        let mv = |s: f64| {
            Multivector::from_terms(n, BasisIndex::all(n).into_iter().enumerate().map(|(k, i)| (i, (s + 1.7 * k as f64).sin())))
                .unwrap()
        };
        let du: Vec<_> = (0..n).map(|h| mv(10.0 + h as f64)).collect();
        let dv: Vec<_> = (0..n).map(|h| mv(20.0 + h as f64)).collect();
        assert!(algebraic_product_rule_gap(&mv(0.3), &mv(0.9), &du, &dv).unwrap() < 1e-12);
    }
}
