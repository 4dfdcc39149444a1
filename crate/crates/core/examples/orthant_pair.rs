//! The orthant and its negative: minimal decompositions are the lattice
//! parts `x⁺` and `−x⁻`, and the conormality constant under `l1` is 1.

use conormal::alpha::AlphaMode;
use conormal::decomposition::{alpha_conormal, decompose_min};
use conormal::fixtures::orthant_pair;
use conormal::geometry::{NormSpec, Tolerance, Vector};

fn main() -> conormal::Result<()> {
    let tol = Tolerance::default();
    let norm = NormSpec::l1();
    for n in [2, 5, 10] {
        let family = orthant_pair(n);
        let a = alpha_conormal(&family, &norm, AlphaMode::ExactVertex, 0, 0, &tol)?;
        println!("n = {n:2}: alpha = {} over {} ball vertices", a.alpha, a.samples);
    }

    let family = orthant_pair(3);
    let x = Vector::new(vec![2.0, -1.5, 0.25])?;
    let d = decompose_min(&family, &norm, &x, &tol)?;
    println!("x = {:?}", x.as_slice());
    for (cone, part) in family.cones.iter().zip(&d.parts) {
        println!("  {:>2}: {:?}", cone.label, part.as_slice());
    }
    println!("  value = {}", d.value);
    Ok(())
}
