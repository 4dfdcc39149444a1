//! Three rays in the plane: generating, with a finite conormality constant
//! that depends on the norm.

use conormal::alpha::AlphaMode;
use conormal::cones::is_generating;
use conormal::decomposition::{alpha_conormal, decompose_min, delta_selection};
use conormal::fixtures::three_rays;
use conormal::geometry::{NormSpec, Tolerance, Vector};

fn main() -> conormal::Result<()> {
    let tol = Tolerance::default();
    let family = three_rays();

    let g = is_generating(&family, &tol)?;
    println!("generating: {} ({} direction certificates)", g.generating, g.certificates.len());
    for c in &g.certificates {
        let parts: Vec<_> = c.parts.iter().map(|p| p.as_slice().to_vec()).collect();
        println!("  {:?} = {:?}", c.direction.as_slice(), parts);
    }

    let l1 = alpha_conormal(&family, &NormSpec::l1(), AlphaMode::ExactVertex, 0, 0, &tol)?;
    println!("l1 alpha (exact)   = {} at {:?}", l1.alpha, l1.witness[0].as_slice());
    let l2 = alpha_conormal(&family, &NormSpec::l2(), AlphaMode::SampledLowerBound, 10_000, 0, &tol)?;
    println!("l2 alpha (sampled) = {:.9} at {:?}", l2.alpha, l2.witness[0].as_slice());

    let x = Vector::new(vec![0.0, -1.0])?;
    let d = decompose_min(&family, &NormSpec::l2(), &x, &tol)?;
    println!("decompose (0, -1): value {:.9}", d.value);
    let s = delta_selection(&family, &NormSpec::l2(), &x.scale(4.0), &tol)?;
    println!("selection at (0, -4): value {:.9}", s.value);
    Ok(())
}
