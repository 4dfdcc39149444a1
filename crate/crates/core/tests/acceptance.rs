//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines always reach the output.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use conormal::alpha::AlphaMode;
use conormal::audit::lipschitz_probe;
use conormal::cli::run_command;
use conormal::cones::{is_generating, ConeFamily};
use conormal::decomposition::{alpha_conormal, delta_selection};
use conormal::error::Error;
use conormal::fixtures;
use conormal::gauge::{beta_openness, metric_cone_axioms, seminorm_q, Gauge, PsiForm, PsiInstance};
use conormal::geometry::{norm_eval, sphere_mesh, NormSpec, Tolerance, Vector};
use conormal::hemicontinuity::{interpolation_witness, transport_witness, ConvexSet, OpenBall};
use conormal::intersection::is_coadditive;
use conormal::problem::parse_problem;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn tol() -> Tolerance {
    Tolerance::default()
}

fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

const FIXTURE_FILES: [&str; 7] = [
    "three_rays_l2.json",
    "three_rays_l1.json",
    "quadrant_wedge_l2.json",
    "orthant_pair_l1.json",
    "orthant_twice_l1.json",
    "rays_e1_e2.json",
    "whole_space.json",
];

fn cli_exit(args: &[&str]) -> i32 {
    let dir = tempfile::tempdir().expect("temp dir");
    let out = dir.path().join("report.json");
    let mut argv = vec!["conormal".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    argv.push("--out".into());
    argv.push(out.to_string_lossy().into_owned());
    run_command(argv)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s(e: Error) -> String {
    e.to_string()
}

/// Closed form for the three rays under the Euclidean norm: decompositions
/// are `(x₁ + c) e₁ + (x₂ + c) e₂ + c·(−e₁ − e₂)` with
/// `c ≥ max(0, −x₁, −x₂)`, and the value `x₁ + x₂ + (2 + √2) c` is
/// increasing in `c`.
fn three_rays_l2_value(x: &[f64]) -> f64 {
    let c = 0f64.max(-x[0]).max(-x[1]);
    x[0] + x[1] + (2.0 + 2f64.sqrt()) * c
}

/// Instances whose map is defined everywhere, i.e. generating for the
/// decomposition form and coadditive for the intersection form.
fn total_instances() -> Vec<(String, PsiInstance)> {
    let mut out = Vec::new();
    for name in FIXTURE_FILES {
        let p = parse_problem(&fixture_path(name)).expect("bundled fixture parses");
        if is_generating(&p.family, &tol()).unwrap().generating {
            out.push((format!("{name}/delta"), PsiInstance::delta(p.family.clone(), p.norm.clone()).unwrap()));
        }
        if is_coadditive(&p.family, &tol()).unwrap().coadditive {
            out.push((format!("{name}/upsilon"), PsiInstance::upsilon(p.family.clone(), p.norm.clone()).unwrap()));
        }
    }
    out
}

/// Angle parametrization of unit queries for the Euclidean norm in the
/// plane: one angle per block.
fn query_at(inst: &PsiInstance, angles: &[f64]) -> Vector {
    let flat: Vec<f64> = angles.iter().flat_map(|t| [t.cos(), t.sin()]).collect();
    let v = Vector::new(flat).unwrap();
    let n = inst.query_norm(&v).unwrap();
    v.scale(1.0 / n)
}

fn rho(inst: &PsiInstance, y: &Vector) -> f64 {
    inst.rho(y, &tol()).unwrap().finite().unwrap()
}

/// The constant: exact over ball vertices for polyhedral norms; for the
/// Euclidean plane a grid over block angles followed by coordinatewise
/// golden-section refinement.
fn alpha_hat(inst: &PsiInstance) -> f64 {
    if inst.norm.is_polyhedral() {
        return inst.alpha(AlphaMode::ExactVertex, 0, 0, &tol()).unwrap().alpha;
    }
    assert_eq!(inst.family.dim, 2, "refinement is written for the plane");
    let blocks = inst.query_dim() / 2;
    let per: usize = if blocks == 1 { 10_000 } else { 64 };
    let step = std::f64::consts::TAU / per as f64;
    let mut best = (vec![0.0; blocks], f64::NEG_INFINITY);
    let total = per.pow(blocks as u32);
    for k in 0..total {
        let mut idx = k;
        let angles: Vec<f64> = (0..blocks)
            .map(|_| {
                let a = (idx % per) as f64 * step;
                idx /= per;
                a
            })
            .collect();
        let v = rho(inst, &query_at(inst, &angles));
        if v > best.1 {
            best = (angles, v);
        }
    }
    let (mut angles, mut value) = best;
    let g = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..6 {
        for b in 0..blocks {
            let (mut lo, mut hi) = (angles[b] - step, angles[b] + step);
            let f = |t: f64, angles: &[f64]| {
                let mut a = angles.to_vec();
                a[b] = t;
                rho(inst, &query_at(inst, &a))
            };
            for _ in 0..60 {
                let m1 = hi - g * (hi - lo);
                let m2 = lo + g * (hi - lo);
                if f(m1, &angles) < f(m2, &angles) {
                    lo = m1;
                } else {
                    hi = m2;
                }
            }
            let t = 0.5 * (lo + hi);
            let v = f(t, &angles);
            if v > value {
                value = v;
                angles[b] = t;
            }
        }
    }
    value
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let file = fixture_path("three_rays_l2.json");
    let code = cli_exit(&["check-conormal", &file.to_string_lossy()]);
    ensure(code == 0, || format!("check-conormal exited {code}"))?;
    let p = parse_problem(&file).map_err(e2s)?;
    let g = is_generating(&p.family, &tol()).map_err(e2s)?;
    ensure(g.generating && g.validate(&p.family, &tol()), || "not generating".into())?;
    let a = alpha_conormal(&p.family, &p.norm, AlphaMode::SampledLowerBound, 10_000, 0, &tol())
        .map_err(e2s)?;
    let elapsed = start.elapsed().as_secs_f64();
    let grid = sphere_mesh(&NormSpec::l2(), 2, 10_000, 0).map_err(e2s)?;
    let oracle_grid = grid
        .iter()
        .map(|x| three_rays_l2_value(x.as_slice()))
        .fold(f64::NEG_INFINITY, f64::max);
    let analytic = (4.0 + 2.0 * 2f64.sqrt()).sqrt();
    ensure((a.alpha - oracle_grid).abs() <= 1e-3, || {
        format!("alpha {} vs grid oracle {oracle_grid}", a.alpha)
    })?;
    ensure((a.alpha - analytic).abs() <= 1e-3, || format!("alpha {} vs {analytic}", a.alpha))?;
    ensure(elapsed < 5.0, || format!("took {elapsed:.2} s"))?;
    Ok(format!(
        "alpha {:.9}, grid oracle {:.9}, sqrt(4+2sqrt2) {:.9}, {:.2} s",
        a.alpha, oracle_grid, analytic, elapsed
    ))
}

fn criterion_2() -> Check {
    let file = fixture_path("quadrant_wedge_l2.json");
    let p = parse_problem(&file).map_err(e2s)?;
    let start = Instant::now();
    let code = cli_exit(&["check-coadditive", &file.to_string_lossy()]);
    let r = is_coadditive(&p.family, &tol()).map_err(e2s)?;
    let elapsed = start.elapsed().as_secs_f64();
    ensure(code == 0, || format!("check-coadditive exited {code}"))?;
    ensure(r.coadditive, || "not coadditive".into())?;
    ensure(r.certificates.len() == 8, || format!("{} certificates", r.certificates.len()))?;
    for c in &r.certificates {
        ensure(c.validate(&p.family, &tol()), || "certificate failed validation".into())?;
        // y − ξ₁ in the quadrant and y − ξ₂ in {u ≥ |v|}
        let a = &c.y - &c.xi.xi[0];
        let b = &c.y - &c.xi.xi[1];
        let ok = a[0] >= -1e-9 && a[1] >= -1e-9 && b[0] + 1e-9 >= b[1].abs();
        ensure(ok, || format!("y = {:?} misses a translate", c.y.as_slice()))?;
    }
    ensure(elapsed < 1.0, || format!("took {elapsed:.3} s"))?;
    Ok(format!("8 certificates re-validated, {:.3} s", elapsed))
}

fn criterion_3() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst = 0.0_f64;
    for n in [2, 5, 10] {
        let family = fixtures::orthant_pair(n);
        let norm = NormSpec::l1();
        let a = alpha_conormal(&family, &norm, AlphaMode::ExactVertex, 0, 0, &tol()).map_err(e2s)?;
        ensure((a.alpha - 1.0).abs() <= 1e-9, || format!("n = {n}: alpha {}", a.alpha))?;
        for _ in 0..500 {
            let x = Vector::new((0..n).map(|_| rng.random_range(-10.0..10.0)).collect()).unwrap();
            let d = delta_selection(&family, &norm, &x, &tol()).map_err(e2s)?;
            let plus: Vec<f64> = x.iter().map(|v| v.max(0.0)).collect();
            let minus: Vec<f64> = x.iter().map(|v| v.min(0.0)).collect();
            for (got, want) in d.parts[0].iter().zip(&plus).chain(d.parts[1].iter().zip(&minus)) {
                worst = worst.max((got - want).abs());
            }
        }
    }
    ensure(worst <= tol().mem_tol, || format!("lattice parts off by {worst:e}"))?;
    Ok(format!("alpha = 1 for n = 2, 5, 10; 1500 lattice decompositions, max error {worst:e}"))
}

fn rel_diff(a: &Vector, b: &Vector) -> f64 {
    let scale = a.max_abs().max(b.max_abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).max_abs() / scale
    }
}

fn criterion_4(instances: &[(String, PsiInstance, f64)]) -> Check {
    let t = tol();
    let mut worst_hom = 0.0_f64;
    let mut checked = 0;
    for (name, inst, alpha) in instances {
        let mesh = inst.mesh(500, 4).map_err(e2s)?;
        for x in &mesh {
            let s = inst.select(x, &t).map_err(e2s)?;
            ensure(inst.certifies(x, &s, &t).map_err(e2s)?, || format!("{name}: certificate failed"))?;
            let n = inst.query_norm(x).map_err(e2s)?;
            ensure(s.value <= (alpha + 1e-6) * n, || {
                format!("{name}: value {} above ({alpha} + 1e-6)·{n}", s.value)
            })?;
            for lam in [0.1, 7.3] {
                let y = x.scale(lam);
                let sl = inst.select(&y, &t).map_err(e2s)?;
                ensure(inst.certifies(&y, &sl, &t).map_err(e2s)?, || format!("{name}: certificate failed"))?;
                worst_hom = worst_hom.max(rel_diff(&sl.point, &s.point.scale(lam)));
                ensure(sl.value <= (alpha + 1e-6) * inst.query_norm(&y).map_err(e2s)?, || {
                    format!("{name}: scaled bound failed")
                })?;
            }
            checked += 1;
        }
    }
    ensure(worst_hom <= 1e-12, || format!("homogeneity error {worst_hom:e}"))?;
    Ok(format!(
        "{} instances, {checked} mesh points, homogeneity error {worst_hom:e}",
        instances.len()
    ))
}

fn ext(g: Gauge) -> f64 {
    g.finite().unwrap_or(f64::INFINITY)
}

fn criterion_5(instances: &[(String, PsiInstance, f64)]) -> Check {
    let t = tol();
    let slack = |s: f64| 1e-8 * (1.0 + s);
    let mut exact_products = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    // the non-total instances exercise the infinite branch of the laws
    let mut all: Vec<(String, PsiInstance)> =
        instances.iter().map(|(n, i, _)| (n.clone(), i.clone())).collect();
    all.push(("rays_e1_e2.json/delta".into(), PsiInstance::delta(fixtures::two_rays(), NormSpec::l1()).unwrap()));
    all.push(("rays_e1_e2.json/upsilon".into(), PsiInstance::upsilon(fixtures::two_rays(), NormSpec::l1()).unwrap()));
    for (name, inst) in &all {
        for _ in 0..200 {
            let x = inst.random_unit_query(&mut rng).map_err(e2s)?.scale(rng.random_range(0.0..4.0));
            let y = inst.random_unit_query(&mut rng).map_err(e2s)?.scale(rng.random_range(0.0..4.0));
            let lam: f64 = rng.random_range(0.0..6.0);
            let r = |v: &Vector| inst.rho(v, &t).map(ext).map_err(e2s);
            let q = |v: &Vector| seminorm_q(inst, v, &t).map(ext).map_err(e2s);
            let (rx, ry, rxy) = (r(&x)?, r(&y)?, r(&(&x + &y))?);
            let rlx = r(&x.scale(lam))?;
            let hom_ok = if rx.is_finite() { (rlx - lam * rx).abs() <= slack(lam * rx) } else { lam == 0.0 || rlx.is_infinite() };
            ensure(hom_ok, || format!("{name}: rho homogeneity {rlx} vs {lam}·{rx}"))?;
            ensure(rxy <= rx + ry + slack(rx + ry), || format!("{name}: rho subadditivity"))?;
            let (qx, qy, qxy) = (q(&x)?, q(&y)?, q(&(&x + &y))?);
            let qlx = q(&x.scale(-lam))?;
            let qhom = if qx.is_finite() { (qlx - lam * qx).abs() <= slack(lam * qx) } else { lam == 0.0 || qlx.is_infinite() };
            ensure(qhom, || format!("{name}: q absolute homogeneity"))?;
            ensure(qxy <= qx + qy + slack(qx + qy), || format!("{name}: q subadditivity"))?;
            let qd = q(&(&x - &y))?;
            if rx.is_finite() && ry.is_finite() {
                ensure((rx - ry).abs() <= qd + slack(qd), || format!("{name}: |rho(x) - rho(y)| > q(x - y)"))?;
            }
        }
        if name.starts_with("rays_e1_e2") {
            // no finite alpha: the map is not total
            let r = beta_openness(inst, AlphaMode::ExactVertex, 0, 0, &t);
            let negative = matches!(r, Err(Error::NotGenerating(_) | Error::NotCoadditive(_)));
            ensure(negative, || format!("{name}: expected a non-total verdict, got {r:?}"))?;
        } else if inst.norm.is_polyhedral() {
            let b = beta_openness(inst, AlphaMode::ExactVertex, 0, 0, &t).map_err(e2s)?;
            if let Some(p) = b.alpha_times_beta {
                ensure((p - 1.0).abs() <= 1e-9, || format!("{name}: alpha·beta = {p}"))?;
                exact_products += 1;
            }
        }
    }
    Ok(format!("{} instances × 200 samples; alpha·beta = 1 on {exact_products} exact instances", all.len()))
}

/// A non-zero element of the fiber over 0, when one exists.
fn recession_element(inst: &PsiInstance, rng: &mut ChaCha8Rng) -> Option<Vector> {
    for _ in 0..8 {
        let v = inst.random_unit_query(rng).ok()?;
        let a = inst.select(&v, &tol()).ok()?;
        let b = inst.select(&-&v, &tol()).ok()?;
        let k = &a.point + &b.point;
        if k.max_abs() > 1e-6 {
            return Some(k);
        }
    }
    None
}

fn criterion_6(instances: &[(String, PsiInstance, f64)]) -> Check {
    let t = tol();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut halving_runs = 0;
    let mut total = 0;
    for (name, inst, alpha_hat) in instances {
        for _ in 0..100 {
            // interpolation inside the fiber over a random query
            let a = inst.random_unit_query(&mut rng).map_err(e2s)?.scale(rng.random_range(0.5..2.0));
            let y = inst.select(&a, &t).map_err(e2s)?;
            let eps0: f64 = rng.random_range(0.1..1.0);
            let set = ConvexSet::Fiber { inst, query: a.clone() };
            let (alpha, x) = match recession_element(inst, &mut rng) {
                Some(k) => {
                    let alpha = y.value;
                    let target = alpha + eps0;
                    let norm_at = |s: f64| inst.fiber_norm(&(&y.point + &k.scale(s))).unwrap();
                    let mut hi = 1.0;
                    while norm_at(hi) <= target {
                        hi *= 2.0;
                    }
                    let mut lo = 0.0;
                    for _ in 0..80 {
                        let mid = 0.5 * (lo + hi);
                        if norm_at(mid) <= target {
                            lo = mid;
                        } else {
                            hi = mid;
                        }
                    }
                    (alpha, &y.point + &k.scale(lo))
                }
                None => ((y.value - eps0 / 2.0).max(0.0), y.point.clone()),
            };
            let spread = inst.fiber_norm(&(&x - &y.point)).map_err(e2s)?;
            let radius = if spread > 0.0 { spread * rng.random_range(0.05..1.0) } else { 0.5 };
            let u = OpenBall { center: x.clone(), radius };
            let w = interpolation_witness(&set, alpha, eps0, &u, &x, &y.point, &t)
                .map_err(|e| format!("{name}: interpolation: {e}"))?;
            ensure(w.norm < alpha + eps0 - t.feas_tol, || format!("{name}: norm not strict"))?;
            ensure(u.contains(&set, &w.point).map_err(e2s)?, || format!("{name}: point outside U"))?;
            ensure(set.contains(&w.point, &t).map_err(e2s)?, || format!("{name}: point outside G"))?;
            if w.t0 > 0.0 {
                halving_runs += 1;
            }

            // transport between two unit queries
            let x = inst.random_unit_query(&mut rng).map_err(e2s)?;
            let z = if rng.random_bool(0.5) {
                inst.random_unit_query(&mut rng).map_err(e2s)?
            } else {
                let d = inst.random_unit_query(&mut rng).map_err(e2s)?;
                let p = &x + &d.scale(rng.random_range(1e-3..0.3));
                let n = inst.query_norm(&p).map_err(e2s)?;
                p.scale(1.0 / n)
            };
            let tw = transport_witness(inst, *alpha_hat, &x, &z, 1e-6, &t)
                .map_err(|e| format!("{name}: transport: {e}"))?;
            ensure(inst.in_fiber(&z, &tw.combined.point, &t).map_err(e2s)?, || {
                format!("{name}: y + v outside the fiber over z")
            })?;
            total += 2;
        }
    }
    Ok(format!(
        "{total} witnesses over {} instances, {halving_runs} needed halving, none missing",
        instances.len()
    ))
}

fn criterion_7() -> Check {
    let inst = PsiInstance::delta(fixtures::orthant_pair(2), NormSpec::l1()).unwrap();
    let a = lipschitz_probe(&inst, 10_000, 7, Some(1.0), &tol()).map_err(e2s)?;
    let b = lipschitz_probe(&inst, 10_000, 7, Some(1.0), &tol()).map_err(e2s)?;
    ensure(a == b, || "probe not deterministic".into())?;
    let max = a.stats.as_ref().map(|s| s.max).unwrap_or(f64::NAN);
    ensure(max <= 1.0 + 1e-6, || format!("max quotient {max}"))?;
    // exact identity: ‖x⁺ − z⁺‖₁ + ‖x⁻ − z⁻‖₁ = ‖x − z‖₁
    let (x, z) = a.worst_pair.clone().unwrap();
    let oracle: f64 = x.iter().zip(z.iter()).map(|(p, q)| (p.max(0.0) - q.max(0.0)).abs() + (p.min(0.0) - q.min(0.0)).abs()).sum::<f64>()
        / norm_eval(&NormSpec::l1(), &(&x - &z)).unwrap();
    ensure((oracle - 1.0).abs() < 1e-12, || format!("oracle quotient {oracle}"))?;
    let u = PsiInstance::upsilon(fixtures::quadrant_and_wedge(), NormSpec::l2()).unwrap();
    let c = lipschitz_probe(&u, 300, 7, None, &tol()).map_err(e2s)?;
    let d = lipschitz_probe(&u, 300, 7, None, &tol()).map_err(e2s)?;
    ensure(c == d, || "intersection probe not deterministic".into())?;
    Ok(format!("10^4 pairs, max quotient {max:.12}, repeat runs identical"))
}

fn criterion_8() -> Check {
    let family: ConeFamily = fixtures::two_rays();
    let t = tol();
    let g = is_generating(&family, &t).map_err(e2s)?;
    ensure(!g.generating, || "rays reported generating".into())?;
    let f = g.failing.as_ref().ok_or("no failing direction")?;
    ensure(g.validate(&family, &t), || "separator failed validation".into())?;
    // independent: h·g ≥ 0 on both rays, h·d < 0
    let h = &f.separator;
    ensure(h[0] >= 0.0 && h[1] >= 0.0 && h.dot(&f.direction) < 0.0, || "separator wrong".into())?;
    let c = is_coadditive(&family, &t).map_err(e2s)?;
    ensure(!c.coadditive, || "rays reported coadditive".into())?;
    let ft = c.failing.as_ref().ok_or("no failing tuple")?;
    ensure(c.validate(&family, &t), || "intersection certificate failed validation".into())?;
    // independent: (ξ₁ + R₊e₁) ∩ (ξ₂ + R₊e₂) is empty iff ξ₁₂ ≠ ξ₂₂ + s or ...; check directly
    let (a, b) = (&ft.xi.xi[0], &ft.xi.xi[1]);
    let meets = a[1] >= b[1] && b[0] >= a[0];
    ensure(!meets, || "failing tuple actually meets".into())?;
    let file = fixture_path("rays_e1_e2.json");
    let f = file.to_string_lossy();
    let c1 = cli_exit(&["check-conormal", &f]);
    let c2 = cli_exit(&["check-coadditive", &f]);
    ensure(c1 == 1 && c2 == 1, || format!("CLI exits {c1}, {c2}"))?;
    Ok(format!(
        "separator {:?} for {:?}; disjoint translates {:?}; CLI exit 1",
        h.as_slice(),
        f_dir(&g.failing.as_ref().unwrap().direction),
        [a.as_slice(), b.as_slice()]
    ))
}

fn f_dir(v: &Vector) -> Vec<f64> {
    v.as_slice().to_vec()
}

fn criterion_9(instances: &[(String, PsiInstance, f64)]) -> Check {
    let mut n = 0;
    for (name, inst, _) in instances.iter().filter(|(_, i, _)| i.form == PsiForm::Delta) {
        let l1 = PsiInstance::delta(inst.family.clone(), NormSpec::l1()).unwrap();
        let r = metric_cone_axioms(&l1, 100, 9, &tol()).map_err(e2s)?;
        if let Some(bad) = r.checks.iter().find(|c| !c.passed) {
            return Err(format!("{name}: {} (error {:e})", bad.law, bad.max_error));
        }
        n += 1;
    }
    Ok(format!("12 laws on 100 triples for {n} decomposition cones"))
}

fn main() -> ExitCode {
    let instances: Vec<(String, PsiInstance, f64)> = total_instances()
        .into_iter()
        .map(|(n, i)| {
            let a = alpha_hat(&i);
            (n, i, a)
        })
        .collect();
    let criteria: Vec<(&str, Box<dyn Fn() -> Check + '_>)> = vec![
        ("three rays: generating, Euclidean constant", Box::new(criterion_1)),
        ("quadrant and wedge: coadditive with 8 certificates", Box::new(criterion_2)),
        ("orthant pair: constant 1, lattice decomposition", Box::new(criterion_3)),
        ("selection laws on every fixture", Box::new(|| criterion_4(&instances))),
        ("gauge and seminorm laws, alpha·beta = 1", Box::new(|| criterion_5(&instances))),
        ("interpolation and transport witnesses", Box::new(|| criterion_6(&instances))),
        ("Lipschitz probe on the orthant pair", Box::new(criterion_7)),
        ("negative controls on two rays", Box::new(criterion_8)),
        ("metric-cone axioms", Box::new(|| criterion_9(&instances))),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let r = run();
        let secs = start.elapsed().as_secs_f64();
        match r {
            Ok(detail) => println!("PASS {} {name}: {detail} [{secs:.2} s]", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why} [{secs:.2} s]", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
