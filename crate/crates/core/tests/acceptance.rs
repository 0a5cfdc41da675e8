//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the lines always reach the output.
//! The process fails if any criterion other than the n = 4 smoke test fails;
//! that one is reported but not enforced (see the README).

use std::time::Instant;

use kahler::green::green_identity_residual;
use kahler::hodge::{decompose_full_space, decompose_region, volume_cancellation_term, BoundaryPart, DecompositionConfig};
use kahler::identities::{exact_identities, random_field, verify_product_rules};
use kahler::oracle::check_dimension;
use kahler::potential::delta_reconstruct_at;
use kahler::suites::{
    boundary_grid, boundary_row, decreasing_or_negligible, gaussian, gaussian_field, gaussian_gradient,
    green_configuration, BoundaryKind, ROUNDING_FLOOR,
};
use kahler::{BasisIndex, FormField, GridSpec, KernelSpec, Multivector, Region, SelfCellRule};

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn series(values: &[f64]) -> String {
    values.iter().map(|v| format!("{v:.3e}")).collect::<Vec<_>>().join(" -> ")
}

fn criterion_1() -> Verdict {
    let t = Instant::now();
    let mut mismatches = 0;
    let mut comparisons = 0;
    for n in 1..=5 {
        let r = check_dimension(n);
        mismatches += r.mismatches();
        comparisons += r.comparisons;
    }
    let secs = t.elapsed().as_secs_f64();
    verdict(
        mismatches == 0 && secs < 10.0,
        format!("{comparisons} oracle comparisons for n <= 5, {mismatches} mismatches, {secs:.3}s"),
    )
}

fn phi_at_origin(points: usize, half: f64, n: usize) -> (f64, f64) {
    let t = Instant::now();
    let g = GridSpec::cube(n, -half, half, points).unwrap();
    let phi = FormField::scalar_from_fn(&g, gaussian);
    let spec = KernelSpec::new(n, SelfCellRule::default()).unwrap();
    let v = delta_reconstruct_at(&phi, &Region::full(&g), &spec, &[vec![0.0; n]]).unwrap()[0];
    (v, t.elapsed().as_secs_f64())
}

fn criterion_2() -> Verdict {
    let (v32, t32) = phi_at_origin(32, 4.0, 3);
    let (v48, t48) = phi_at_origin(48, 5.0, 3);
    let (e32, e48) = ((v32 - 1.0).abs(), (v48 - 1.0).abs());
    verdict(
        e32 < 0.05 && e48 < e32 && t32 < 60.0 && t48 < 60.0,
        format!("phi(0) = {v32:.6} at 32^3 (error {e32:.3e}, {t32:.2}s), {v48:.6} at 48^3 (error {e48:.3e}, {t48:.2}s)"),
    )
}

/// `(‖coclosed‖/‖α‖, ‖closed − α‖/‖α‖)` for `α = df`, and `‖closed‖/‖α‖`
/// for the co-exact 2-form `δ(f z)`.
fn recovery(n: usize, points: usize, half: f64) -> (f64, f64, f64, f64) {
    let t = Instant::now();
    let g = GridSpec::cube(n, -half, half, points).unwrap();
    let cfg = DecompositionConfig::default();
    let alpha = gaussian_gradient(&g);
    let res = decompose_full_space(&alpha, &cfg).unwrap();
    let an = alpha.l2_norm(2);
    let coclosed = res.coclosed.l2_norm(2) / an;
    let closed_err = res.closed.sub(&alpha).unwrap().l2_norm(2) / an;
    let beta = FormField::from_fn(&g, BasisIndex::full(n), gaussian).interior_derivative();
    let dual = decompose_full_space(&beta, &cfg).unwrap();
    let closed_dual = dual.closed.l2_norm(2) / beta.l2_norm(2);
    (coclosed, closed_err, closed_dual, t.elapsed().as_secs_f64())
}

fn criterion_3() -> Verdict {
    let (co, ce, cd, secs) = recovery(3, 32, 4.0);
    verdict(
        co < 0.05 && ce < 0.05 && cd < 0.05,
        format!(
            "32^3: |coclosed|/|a| = {co:.4}, |closed - a|/|a| = {ce:.4}; co-exact 2-form |closed|/|a| = {cd:.4} ({secs:.1}s)"
        ),
    )
}

/// Scalar and vector Helmholtz potentials coded directly on `[f64; 3]`
/// arrays: `a = −∇Φ + ∇×A` with `Φ = −c N[∇·a]`, `A = −c N[∇×a]`.
mod classical {
    pub struct Grid {
        pub p: usize,
        pub h: f64,
        pub min: f64,
    }

    impl Grid {
        pub fn idx(&self, i: usize, j: usize, k: usize) -> usize {
            (i * self.p + j) * self.p + k
        }

        pub fn len(&self) -> usize {
            self.p * self.p * self.p
        }

        pub fn x(&self, i: usize) -> f64 {
            if i + 1 == self.p {
                -self.min
            } else {
                self.min + i as f64 * self.h
            }
        }

        /// Central differences inside, second-order one-sided at the ends.
        pub fn diff(&self, f: &[f64], axis: usize) -> Vec<f64> {
            let p = self.p;
            let mut out = vec![0.0; f.len()];
            for i in 0..p {
                for j in 0..p {
                    for k in 0..p {
                        let m = [i, j, k];
                        let at = |t: usize| {
                            let mut q = m;
                            q[axis] = t;
                            f[self.idx(q[0], q[1], q[2])]
                        };
                        let t = m[axis];
                        let d = if t == 0 {
                            (4.0 * (at(1) - at(0)) - (at(2) - at(0))) / (2.0 * self.h)
                        } else if t == p - 1 {
                            -(4.0 * (at(p - 2) - at(p - 1)) - (at(p - 3) - at(p - 1))) / (2.0 * self.h)
                        } else {
                            (at(t + 1) - at(t - 1)) / (2.0 * self.h)
                        };
                        out[self.idx(i, j, k)] = d;
                    }
                }
            }
            out
        }

        /// `h³ Σ' g(x')/|x − x'|` plus the self-cell term `h³ K₀ g(x)`.
        pub fn newton(&self, g: &[f64], k0: f64) -> Vec<f64> {
            let p = self.p;
            let v = self.h.powi(3);
            let mut out = vec![0.0; g.len()];
            for a in 0..self.len() {
                let (ai, aj, ak) = (a / (p * p), (a / p) % p, a % p);
                let mut s = 0.0;
                for b in 0..self.len() {
                    if g[b] == 0.0 {
                        continue;
                    }
                    let (bi, bj, bk) = (b / (p * p), (b / p) % p, b % p);
                    let d2 = [(ai, bi), (aj, bj), (ak, bk)]
                        .iter()
                        .map(|&(x, y)| ((x as f64 - y as f64) * self.h).powi(2))
                        .sum::<f64>();
                    s += if a == b { k0 * g[b] } else { g[b] / d2.sqrt() };
                }
                out[a] = v * s;
            }
            out
        }
    }

    pub fn curl(g: &Grid, a: &[Vec<f64>; 3]) -> [Vec<f64>; 3] {
        let d = |f: &Vec<f64>, ax: usize| g.diff(f, ax);
        let sub = |x: Vec<f64>, y: Vec<f64>| x.iter().zip(&y).map(|(p, q)| p - q).collect::<Vec<_>>();
        [
            sub(d(&a[2], 1), d(&a[1], 2)),
            sub(d(&a[0], 2), d(&a[2], 0)),
            sub(d(&a[1], 0), d(&a[0], 1)),
        ]
    }

    /// Returns the gradient part and the curl part.
    pub fn helmholtz(g: &Grid, a: &[Vec<f64>; 3], k0: f64) -> ([Vec<f64>; 3], [Vec<f64>; 3]) {
        let c = -1.0 / (4.0 * std::f64::consts::PI);
        let mut div = vec![0.0; g.len()];
        for (ax, comp) in a.iter().enumerate() {
            for (o, v) in div.iter_mut().zip(g.diff(comp, ax)) {
                *o += v;
            }
        }
        let phi = g.newton(&div, k0);
        let grad = [0, 1, 2].map(|ax| g.diff(&phi, ax).into_iter().map(|v| c * v).collect::<Vec<_>>());
        let w = curl(g, a);
        let pot = [0, 1, 2].map(|ax| g.newton(&w[ax], k0));
        let rot = curl(g, &pot).map(|v| v.into_iter().map(|x| -c * x).collect::<Vec<_>>());
        (grad, rot)
    }
}

fn criterion_4() -> Verdict {
    let (p, half) = (16, 3.0);
    let grid = GridSpec::cube(3, -half, half, p).unwrap();
    let cg = classical::Grid {
        p,
        h: 2.0 * half / (p - 1) as f64,
        min: -half,
    };
    let field = |x: &[f64]| {
        let g = gaussian(x);
        [
            (x[1] + 0.3 * x[0]) * g,
            (0.5 - x[0] + x[2] * x[2]) * g,
            (x[0] * x[1] - 0.2) * g,
        ]
    };
    let mut a: [Vec<f64>; 3] = [vec![0.0; cg.len()], vec![0.0; cg.len()], vec![0.0; cg.len()]];
    for i in 0..p {
        for j in 0..p {
            for k in 0..p {
                let v = field(&[cg.x(i), cg.x(j), cg.x(k)]);
                for c in 0..3 {
                    a[c][cg.idx(i, j, k)] = v[c];
                }
            }
        }
    }
    let k0 = SelfCellRule::default().value(&[cg.h; 3]);
    let (grad, rot) = classical::helmholtz(&cg, &a, k0);

    let alpha = (1..=3)
        .map(|c| FormField::from_fn(&grid, BasisIndex::axis(c), |x| field(x)[c - 1]))
        .reduce(|u, v| u.add(&v).unwrap())
        .unwrap();
    let res = decompose_full_space(&alpha, &DecompositionConfig::default()).unwrap();
    let mut worst: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for c in 0..3 {
        let idx = BasisIndex::axis(c + 1);
        let closed = res.closed.component_or_zero(idx);
        let coclosed = res.coclosed.component_or_zero(idx);
        for k in 0..grid.len() {
            worst = worst.max((closed[k] - grad[c][k]).abs()).max((coclosed[k] - rot[c][k]).abs());
            scale = scale.max(grad[c][k].abs()).max(rot[c][k].abs());
        }
    }
    verdict(
        worst <= 1e-10,
        format!("16^3 1-form: max componentwise difference {worst:.3e} (component scale {scale:.3e})"),
    )
}

fn criterion_5() -> Verdict {
    let mut worst: f64 = 0.0;
    let mut name = String::new();
    let mut count = 0;
    for n in [3, 4] {
        let g = GridSpec::cube(n, -2.0, 2.0, 9).unwrap();
        let cgrid = GridSpec::cube(n, 0.0, 1.0, 3).unwrap();
        for seed in 0..20u64 {
            let u = random_field(&g, 1000 + seed);
            let f = random_field(&g, 2000 + seed).grade_part(0);
            let c: Multivector = random_field(&cgrid, 3000 + seed).at(0);
            let field_scale = u.max_abs(0).max(f.max_abs(0));
            for r in exact_identities(&u, &c, &f, 1).unwrap() {
                let rel = r.residual / r.scale.max(field_scale);
                if rel > worst {
                    worst = rel;
                    name = format!("{} (n = {n}, field {seed})", r.name);
                }
            }
            count += 1;
        }
    }
    verdict(
        worst <= 1e-12,
        format!("{count} random fields, n in {{3, 4}}: worst residual/scale {worst:.3e} at {name}"),
    )
}

fn criterion_6() -> Verdict {
    let coarse = GridSpec::cube(3, -3.0, 3.0, 25).unwrap();
    let fine = GridSpec::cube(3, -3.0, 3.0, 49).unwrap();
    let rules = |g: &GridSpec| verify_product_rules(&gaussian_field(g, 0.0), &gaussian_field(g, 5.0), 1).unwrap();
    let ratios: Vec<(String, f64)> = rules(&coarse)
        .iter()
        .zip(rules(&fine))
        .map(|(c, f)| (c.name.clone(), c.residual / f.residual))
        .collect();
    let pass = ratios.iter().all(|(_, r)| (3.5..=4.5).contains(r));
    let text: Vec<String> = ratios.iter().map(|(n, r)| format!("{n} {r:.3}")).collect();
    verdict(pass, format!("h -> h/2 residual ratios: {}", text.join(", ")))
}

fn criterion_7() -> Verdict {
    let green = |p: usize| {
        let (u, v, region) = green_configuration(p).unwrap();
        green_identity_residual(&u, &v, &region).unwrap()
    };
    let (coarse, fine) = (green(17), green(33));
    let ratio = coarse.pointwise / fine.pointwise;
    let at32 = green(32);
    let rel = at32.integrated_relative();
    verdict(
        (3.5..=4.5).contains(&ratio) && rel < 0.01,
        format!(
            "pointwise ratio {ratio:.3} (h -> h/2); integrated |surface - volume|/|surface| = {rel:.3e} at 32^3 (surface {:.6}, volume {:.6})",
            at32.surface, at32.volume
        ),
    )
}

fn criterion_8() -> Verdict {
    let cfg = DecompositionConfig {
        boundary_diagnostics: false,
        ..Default::default()
    };
    let mut recon: f64 = 0.0;
    let mut dd = Vec::new();
    let mut ddelta = Vec::new();
    for p in [16, 24, 32] {
        let g = boundary_grid(p).unwrap();
        let alpha = gaussian_gradient(&g);
        let res = decompose_region(&alpha, &Region::full(&g), &cfg).unwrap();
        let d = &res.diagnostics;
        recon = recon.max(d.reconstruction_error);
        let (a, b) = d.hyperharmonic.unwrap();
        dd.push(a / d.alpha_norm);
        ddelta.push(b / d.alpha_norm);
    }

    let g = GridSpec::cube(3, -1.0, 1.0, 12).unwrap();
    let c = Multivector::from_terms(3, [(BasisIndex::axis(1), 1.5), (BasisIndex::axis(3), -0.25)]).unwrap();
    let alpha = FormField::constant(&g, &c);
    let region = Region::parse(&g, "2:9,0:11,3:10").unwrap();
    let res = decompose_region(&alpha, &region, &cfg).unwrap();
    let constant_ok = res.harmonic.sub(&alpha.restrict(&region).unwrap()).unwrap().is_zero()
        && res.diagnostics.hyperharmonic == Some((0.0, 0.0));

    let pass = recon <= 1e-13
        && decreasing_or_negligible(&dd, ROUNDING_FLOOR)
        && decreasing_or_negligible(&ddelta, ROUNDING_FLOOR)
        && constant_ok;
    verdict(
        pass,
        format!(
            "reconstruction {recon:.1e}; |delta d F|/|a| {} (zero to rounding); |d delta F|/|a| {}; constant a: harmonic = a and residuals 0: {constant_ok}",
            series(&dd),
            series(&ddelta)
        ),
    )
}

fn criterion_9() -> Verdict {
    let cfg = DecompositionConfig::default();
    let mut pass = true;
    let mut parts = Vec::new();
    for kind in BoundaryKind::ALL {
        let errs: Vec<f64> = [16, 24, 32]
            .iter()
            .map(|&p| boundary_row(kind, p, &cfg).unwrap().relative_error())
            .collect();
        pass &= errs.windows(2).all(|w| w[1] < w[0]);
        parts.push(format!("{} {}", kind.name(), series(&errs)));
    }
    verdict(pass, format!("surface prediction vs discrete remainder: {}", parts.join("; ")))
}

fn criterion_10() -> Verdict {
    let mut worst: f64 = 0.0;
    for (kind, part) in [
        (BoundaryKind::Gradient, BoundaryPart::Interior),
        (BoundaryKind::Curl, BoundaryPart::Exterior),
        (BoundaryKind::Curl, BoundaryPart::Interior),
        (BoundaryKind::Coexact, BoundaryPart::Interior),
        (BoundaryKind::Coexact, BoundaryPart::Exterior),
    ] {
        let g = boundary_grid(20).unwrap();
        let alpha = kind.field(&g);
        let (e, scale) = volume_cancellation_term(&alpha, &Region::full(&g), part, 2).unwrap();
        worst = worst.max(e.max_abs(0) / scale);
    }
    verdict(worst <= 1e-10, format!("max |E| / scale = {worst:.3e} over five field/line pairs at 20^3"))
}

fn criterion_11() -> Verdict {
    let t = Instant::now();
    let (v, _) = phi_at_origin(12, 3.5, 4);
    let e = (v - 1.0).abs();
    let (co, ce, cd, _) = recovery(4, 12, 3.5);
    let secs = t.elapsed().as_secs_f64();
    verdict(
        e < 0.1 && co < 0.1 && ce < 0.1 && cd < 0.1 && secs < 300.0,
        format!(
            "12^4: phi(0) = {v:.4} (error {e:.3e}); |coclosed|/|a| = {co:.4}, |closed - a|/|a| = {ce:.4}, co-exact |closed|/|a| = {cd:.4} ({secs:.1}s)"
        ),
    )
}

fn main() {
    let criteria: [(usize, fn() -> Verdict); 11] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
        (11, criterion_11),
    ];
    let mut enforced_failures = 0;
    for (k, run) in criteria {
        let v = run();
        let status = if v.pass { "PASS" } else { "FAIL" };
        println!("criterion {k:2}: {status} {}", v.detail);
        if !v.pass && k != 11 {
            enforced_failures += 1;
        }
    }
    if enforced_failures > 0 {
        eprintln!("{enforced_failures} acceptance criteria failed");
        std::process::exit(1);
    }
}
