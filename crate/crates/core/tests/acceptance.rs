//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit status if
//! any criterion fails.

mod common;

use std::time::{Duration, Instant};

use common::*;
use num_traits::Zero;
use polychi_core::constructible::pushforward_fiber_oracle;
use polychi_core::integral::{
    cauchy_crofton_check, disk_oracle, external_angle, intrinsic_volumes, kinematic_check_r2, normal_fan, steiner_check,
};
use polychi_core::radon::{dual_radon_eval, dual_radon_oracle, eval_radon, kernel_probe, radon, verify_inversion};
use polychi_core::scalar::{int, ratio, vector, Scalar};
use polychi_core::{AffineMap, Polytope, ProjConstructibleFn, ProjPoint, ProjTerm};
use rand::Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn inversion() -> Outcome {
    let mut r = rng(1);
    let mut points = 0;
    for (n, count) in [(2, 50), (3, 20)] {
        for _ in 0..count {
            let phi = random_proj_fn(&mut r, n, 5, false);
            let mut samples = sample_points(&mut r, &phi, 0);
            samples.truncate(10);
            while samples.len() < 20 {
                samples.push(ProjPoint::new(random_rational_vector(&mut r, n + 1, 5)).unwrap_or_else(|_| pt(&[1, 0, 0, 0][..=n])));
            }
            let report = verify_inversion(&phi, &samples).unwrap();
            if let Some(e) = report.entries.iter().find(|e| !e.residual.is_zero()) {
                return outcome(false, format!("n={n}: residual {} at {:?}", e.residual, e.point.coords()));
            }
            points += samples.len();
        }
    }
    outcome(true, format!("70 functions, {points} points, all residuals exactly 0"))
}

fn kernel() -> Outcome {
    let mut r = rng(2);
    let plane = kernel_probe(2, 100, &mut r).unwrap();
    let space = kernel_probe(3, 100, &mut r).unwrap();
    if !plane.values.iter().all(|(_, v)| v.is_zero()) {
        return outcome(false, "R(1) nonzero on RP^2");
    }
    if !space.values.iter().all(|(_, v)| *v == int(1)) {
        return outcome(false, "R(1) != 1 on RP^3");
    }
    for i in 0..10 {
        let k = rng_terms(&mut r);
        let phi = ProjConstructibleFn::from_terms(2, Scalar::zero(), k).unwrap();
        assert!(phi.euler_integral().is_zero());
        let psi = radon(&phi).unwrap();
        let hit = (0..200).any(|_| !eval_radon(&psi, &ProjPoint::random(2, 9, &mut r)).unwrap().is_zero());
        if !hit {
            return outcome(false, format!("mean-zero function {i} vanished at every sampled line"));
        }
    }
    outcome(true, "R(1)=0 on RP^2 and 1 on RP^3 at 100 lines/planes; 10 mean-zero functions detected")
}

/// Two to four terms with weights summing to zero.
fn rng_terms<R: Rng>(r: &mut R) -> Vec<ProjTerm> {
    let k = r.random_range(2..=4);
    let mut terms: Vec<ProjTerm> = (0..k - 1).map(|_| ProjTerm::new(random_weight(r), random_body(r, 2, false))).collect();
    let total: Scalar = terms.iter().map(|t| t.weight.clone()).sum();
    terms.push(ProjTerm::new(-total, random_body(r, 2, false)));
    terms
}

fn duality() -> Outcome {
    let mut r = rng(3);
    for n in [2, 3] {
        for _ in 0..40 {
            let k = random_body(&mut r, n, false);
            if k.dual_body().unwrap().dual_body().unwrap() != k {
                return outcome(false, format!("round trip failed in Q^{}", n + 1));
            }
        }
    }
    outcome(true, "40 cones in Q^3 and 40 in Q^4 round-trip")
}

fn incidence() -> Outcome {
    let mut r = rng(4);
    let mut tangent = 0;
    for n in [2, 3] {
        for i in 0..30 {
            let k = random_body(&mut r, n, false);
            let h = if i % 2 == 0 {
                tangent += 1;
                let d = k.dual_generators();
                ProjPoint::new(d[r.random_range(0..d.len())].clone()).unwrap()
            } else {
                ProjPoint::random(n, 6, &mut r)
            };
            let value = eval_radon(&radon(&ProjConstructibleFn::indicator(k.clone())).unwrap(), &h).unwrap();
            let expected = if k.meets(&h) { int(1) } else { int(0) };
            if value != expected || (i % 2 == 0 && value != int(1)) {
                return outcome(false, format!("n={n}: value {value} at {:?}", h.coords()));
            }
        }
    }
    outcome(true, format!("60 pairs, {tangent} tangent hyperplanes valued 1"))
}

fn oracle_lock() -> Outcome {
    let mut r = rng(5);
    for (n, count) in [(2, 200), (3, 50)] {
        for _ in 0..count {
            let psi = radon(&random_proj_fn(&mut r, n, 4, true)).unwrap();
            let x = ProjPoint::random(n, 6, &mut r);
            let (a, b) = (dual_radon_eval(&psi, &x).unwrap(), dual_radon_oracle(&psi, &x).unwrap());
            if a != b {
                return outcome(false, format!("n={n}: closed form {a} vs oracle {b}"));
            }
        }
    }
    outcome(true, "200 pairs in RP^2 and 50 in RP^3 agree")
}

fn pushforward() -> Outcome {
    let mut r = rng(6);
    for _ in 0..50 {
        let phi = random_constructible(&mut r, 2, 3, 3);
        let a = loop {
            let a = random_int_vector(&mut r, 2, 3);
            if !a.iter().all(Zero::is_zero) {
                break a;
            }
        };
        let f = AffineMap::new(vec![a], vec![random_rational(&mut r, 2)]).unwrap();
        let oracle = pushforward_fiber_oracle(&phi, &f).unwrap();
        if !phi.pushforward(&f).unwrap().extensionally_eq(&oracle).unwrap() {
            return outcome(false, "pushforward disagrees with the fiber oracle");
        }
    }
    let to_base = AffineMap::projection(2, &[0]).unwrap();
    for _ in 0..10 {
        let base = random_constructible(&mut r, 1, 3, 3);
        let fiber = random_constructible(&mut r, 1, 3, 3);
        let cylinder = base.exterior_product(&fiber).unwrap();
        let expected = base.scale(&fiber.euler_integral().unwrap());
        if !cylinder.pushforward(&to_base).unwrap().extensionally_eq(&expected).unwrap() {
            return outcome(false, "cylinder pushforward is not χ(fiber)·base");
        }
    }
    outcome(true, "50 oracle comparisons and 10 cylinders exact")
}

fn ring_laws() -> Outcome {
    let mut r = rng(7);
    for _ in 0..30 {
        let a = random_constructible(&mut r, 2, 2, 3);
        let b = random_constructible(&mut r, 2, 2, 3);
        let c = random_constructible(&mut r, 2, 2, 3);
        let assoc = a.multiply(&b).unwrap().multiply(&c).unwrap();
        if !assoc.extensionally_eq(&a.multiply(&b.multiply(&c).unwrap()).unwrap()).unwrap() {
            return outcome(false, "associativity");
        }
        let dist = a.multiply(&b.add(&c).unwrap()).unwrap();
        if !dist.extensionally_eq(&a.multiply(&b).unwrap().add(&a.multiply(&c).unwrap()).unwrap()).unwrap() {
            return outcome(false, "distributivity");
        }
        let g = random_constructible(&mut r, 1, 3, 3);
        let prod = a.exterior_product(&g).unwrap();
        if prod.euler_integral().unwrap() != a.euler_integral().unwrap() * g.euler_integral().unwrap() {
            return outcome(false, "Fubini");
        }
    }
    outcome(true, "30 triples: associativity, distributivity, Fubini exact")
}

fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
}

fn intrinsic() -> Outcome {
    let cube = intrinsic_volumes(&Polytope::cube(3).unwrap()).unwrap().values;
    let square = intrinsic_volumes(&Polytope::cube(2).unwrap()).unwrap().values;
    if !close(&cube, &[1.0, 3.0, 3.0, 1.0], 1e-9) || !close(&square, &[1.0, 2.0, 1.0], 1e-9) {
        return outcome(false, format!("cube {cube:?}, square {square:?}"));
    }
    let mut r = rng(8);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let p = random_full_polytope(&mut r, 3, 9, 5);
        let fan = normal_fan(&p).unwrap();
        let sum: f64 = fan.entries.iter().filter(|e| e.face_dim() == 0).map(|e| external_angle(e).unwrap()).sum();
        worst = worst.max((sum - 1.0).abs());
        let lambda = ratio(r.random_range(1..=9), r.random_range(1..=4));
        let l = polychi_core::scalar::to_f64(&lambda);
        let a = intrinsic_volumes(&p).unwrap().values;
        let b = intrinsic_volumes(&p.dilate(&lambda).unwrap()).unwrap().values;
        for (j, (x, y)) in a.iter().zip(&b).enumerate() {
            if (x * l.powi(j as i32) - y).abs() > 1e-9 * (1.0 + y.abs()) {
                return outcome(false, format!("homogeneity V_{j}: {x} * {l}^{j} vs {y}"));
            }
        }
    }
    outcome(worst <= 1e-9, format!("cube/square exact to 1e-9; Gram max deviation {worst:.2e}; homogeneity ok"))
}

fn steiner() -> Outcome {
    let report = steiner_check(&Polytope::cube(3).unwrap(), &[0.05, 0.1, 0.2], 1_000_000, 9).unwrap();
    let detail = report
        .iter()
        .map(|e| format!("ε={}: {:.5}±{:.5} vs {:.5}", e.epsilon, e.report.estimate, e.report.stderr, e.report.reference))
        .collect::<Vec<_>>()
        .join("; ");
    outcome(report.iter().all(|e| e.report.pass), detail)
}

fn crofton() -> Outcome {
    let square = cauchy_crofton_check(&Polytope::cube(2).unwrap(), 1_000_000, 10).unwrap();
    let pts = (0..64)
        .map(|i| {
            let t = 2.0 * std::f64::consts::PI * i as f64 / 64.0;
            let q = |x: f64| Scalar::new(((x * 1e9).round() as i64).into(), 1_000_000_000.into());
            vec![q(t.cos()), q(t.sin())]
        })
        .collect();
    let gon = cauchy_crofton_check(&Polytope::from_vertices(2, pts).unwrap(), 1_000_000, 11).unwrap();
    let ok = (square.report.estimate - 4.0).abs() <= 0.01 * 4.0
        && (gon.report.estimate - gon.report.reference).abs() <= 0.01 * gon.report.reference;
    outcome(
        ok,
        format!(
            "square {:.4} vs 4; 64-gon {:.4} vs {:.4}",
            square.report.estimate, gon.report.estimate, gon.report.reference
        ),
    )
}

fn kinematic() -> Outcome {
    let disks = disk_oracle(1.0, 0.5);
    if !disks.agrees {
        return outcome(false, format!("disk/disk: direct {} vs closed form {}", disks.direct, disks.closed_form));
    }
    let sq = Polytope::cube(2).unwrap();
    let r = kinematic_check_r2(&sq, &sq, 1_000_000, 12).unwrap();
    let target = 4.0 * std::f64::consts::PI + 16.0;
    let ok = (r.report.reference - target).abs() < 1e-12 && (r.report.estimate - target).abs() <= 0.02 * target;
    outcome(
        ok,
        format!(
            "disk/disk {:.6} = {:.6}; square/square {:.4} vs {:.4} (window half side {:.4})",
            disks.direct, disks.closed_form, r.report.estimate, target, r.window.half_side
        ),
    )
}

fn weyl() -> Outcome {
    let seg: Vec<Vec<f64>> = (1..=3)
        .map(|d| {
            let mut b = vec![int(0); d];
            b[0] = ratio(7, 3);
            intrinsic_volumes(&Polytope::from_vertices(d, vec![vec![int(0); d], b]).unwrap()).unwrap().values
        })
        .collect();
    let tri2 = Polytope::from_vertices(2, vec![vector(&[0, 0]), vector(&[4, 0]), vector(&[1, 3])]).unwrap();
    let lift = AffineMap::new(
        vec![vec![ratio(3, 5), int(0)], vec![ratio(4, 5), int(0)], vec![int(0), int(1)]],
        vector(&[1, -2, 3]),
    )
    .unwrap();
    let t2 = intrinsic_volumes(&tri2).unwrap().values;
    let t3 = intrinsic_volumes(&tri2.affine_image(&lift).unwrap()).unwrap().values;
    let ok = seg[1][..2] == seg[0][..] && seg[2][..2] == seg[0][..] && t3[..3] == t2[..];
    outcome(ok, format!("segment {:?}; triangle {:?} / {:?}", seg[0], t2, t3))
}

type Criterion = (&'static str, Duration, fn() -> Outcome);

fn main() {
    let s = Duration::from_secs;
    let criteria: [Criterion; 12] = [
        ("inversion formula", s(60), inversion),
        ("kernel of R", s(5), kernel),
        ("duality involution", s(10), duality),
        ("transform of an indicator", s(60), incidence),
        ("dual transform oracle lock", s(120), oracle_lock),
        ("push-forward and Euler fibers", s(120), pushforward),
        ("ring laws and Fubini", s(120), ring_laws),
        ("intrinsic volumes", s(60), intrinsic),
        ("Steiner Monte Carlo", s(30), steiner),
        ("Cauchy-Crofton", s(30), crofton),
        ("planar kinematic formula", s(60), kinematic),
        ("Weyl property", s(10), weyl),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let pass = result.pass && elapsed <= *budget;
        if !pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} {} {name} ({:.2}s, budget {}s): {}",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            budget.as_secs(),
            result.detail
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
