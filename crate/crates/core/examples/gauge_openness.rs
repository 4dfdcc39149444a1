//! The gauge of the map behind each constant, its symmetrization, and the
//! openness constant `beta = 1 / alpha`.

use conormal::alpha::AlphaMode;
use conormal::fixtures::{orthant_pair, quadrant_and_wedge, three_rays};
use conormal::gauge::{beta_openness, metric_cone_axioms, seminorm_q, PsiInstance};
use conormal::geometry::{NormSpec, Tolerance, Vector};

fn main() -> conormal::Result<()> {
    let tol = Tolerance::default();

    let delta = PsiInstance::delta(orthant_pair(2), NormSpec::l1())?;
    let y = Vector::new(vec![3.0, -4.0])?;
    println!("rho(3, -4) = {:?}", delta.rho(&y, &tol)?);
    println!("q(3, -4)   = {:?}", seminorm_q(&delta, &y, &tol)?);
    let b = beta_openness(&delta, AlphaMode::ExactVertex, 0, 0, &tol)?;
    println!("orthant pair: alpha {} beta {:?}", b.alpha, b.beta);

    let rays = PsiInstance::delta(three_rays(), NormSpec::l2())?;
    let b = beta_openness(&rays, AlphaMode::SampledLowerBound, 10_000, 0, &tol)?;
    println!("three rays, l2: alpha {:.6} beta {:.6}", b.alpha, b.beta.unwrap_or(f64::INFINITY));

    let ups = PsiInstance::upsilon(quadrant_and_wedge(), NormSpec::l1())?;
    let b = beta_openness(&ups, AlphaMode::ExactVertex, 0, 0, &tol)?;
    println!("quadrant and wedge, l1: alpha {} beta {:?}", b.alpha, b.beta);

    let axioms = metric_cone_axioms(&delta, 100, 7, &tol)?;
    for c in &axioms.checks {
        println!("  [{}] {} (max error {:e})", if c.passed { "ok" } else { "FAIL" }, c.law, c.max_error);
    }
    Ok(())
}
