//! Two rays in the plane: not generating and not coadditive, each refuted
//! by an explicit certificate.

use conormal::cones::is_generating;
use conormal::fixtures::two_rays;
use conormal::geometry::Tolerance;
use conormal::intersection::is_coadditive;

fn main() -> conormal::Result<()> {
    let tol = Tolerance::default();
    let family = two_rays();

    let g = is_generating(&family, &tol)?;
    if let Some(f) = &g.failing {
        println!("not generating: {:?} is missed, separator {:?}", f.direction.as_slice(), f.separator.as_slice());
    }
    println!("certificate valid: {}", g.validate(&family, &tol));

    let c = is_coadditive(&family, &tol)?;
    if let Some(f) = &c.failing {
        let xi: Vec<_> = f.xi.xi.iter().map(|v| v.as_slice().to_vec()).collect();
        let k: Vec<_> = f.separator.functionals.iter().map(|v| v.as_slice().to_vec()).collect();
        println!("not coadditive: translates {xi:?} are disjoint, functionals {k:?}");
    }
    println!("certificate valid: {}", c.validate(&family, &tol));
    Ok(())
}
