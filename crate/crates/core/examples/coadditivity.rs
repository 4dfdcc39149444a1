//! The quadrant and the wedge `u ≥ |v|`: every pair of translates meets.

use conormal::alpha::AlphaMode;
use conormal::fixtures::quadrant_and_wedge;
use conormal::geometry::{NormSpec, Tolerance, Vector};
use conormal::intersection::{alpha_coadditive, intersect_min, is_coadditive, TranslationTuple};

fn main() -> conormal::Result<()> {
    let tol = Tolerance::default();
    let family = quadrant_and_wedge();

    let r = is_coadditive(&family, &tol)?;
    println!("coadditive: {} ({} tuple certificates)", r.coadditive, r.certificates.len());
    for c in &r.certificates {
        let xi: Vec<_> = c.xi.xi.iter().map(|v| v.as_slice().to_vec()).collect();
        println!("  {xi:?} -> y = {:?}", c.y.as_slice());
    }

    let xi = TranslationTuple::new(vec![
        Vector::new(vec![0.0, 0.0])?,
        Vector::new(vec![1.0, 0.0])?,
    ])?;
    let p = intersect_min(&family, &NormSpec::l2(), &xi, &tol)?;
    println!("closest common point for ((0,0), (1,0)): {:?}, norm {}", p.y.as_slice(), p.norm);

    let a = alpha_coadditive(&family, &NormSpec::l1(), AlphaMode::ExactVertex, 0, 0, &tol)?;
    println!("l1 coadditivity constant = {} over {} vertex tuples", a.alpha, a.samples);
    Ok(())
}
