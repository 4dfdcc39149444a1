//! Interpolating back under the norm bound, and transporting a selected
//! fiber element from `x` to a nearby `z`.

use conormal::fixtures::{orthant_pair, three_rays};
use conormal::gauge::PsiInstance;
use conormal::geometry::{NormSpec, Tolerance, Vector};
use conormal::hemicontinuity::{interpolation_witness, transport_witness, ConvexSet, LpSet, OpenBall};

fn main() -> conormal::Result<()> {
    let tol = Tolerance::default();

    let axis = LpSet {
        dim: 2,
        norm: NormSpec::l2(),
        equalities: vec![(Vector::new(vec![0.0, 1.0])?, 0.0)],
        inequalities: vec![],
    };
    let set = ConvexSet::Polyhedron(axis);
    let u = OpenBall {
        center: Vector::new(vec![1.9, 0.0])?,
        radius: 0.12,
    };
    let x = Vector::new(vec![2.0, 0.0])?;
    let y = Vector::zeros(2);
    let w = interpolation_witness(&set, 1.0, 1.0, &u, &x, &y, &tol)?;
    println!("t0 = {}, point {:?}, norm {} < {}", w.t0, w.point.as_slice(), w.norm, w.bound);

    let inst = PsiInstance::delta(three_rays(), NormSpec::l1())?;
    let fiber = ConvexSet::Fiber {
        inst: &inst,
        query: Vector::new(vec![1.0, 0.0])?,
    };
    // (1,0) = (1 + c) e1 + c e2 + c (−e1 − e2); the norm grows with c
    let far = Vector::new(vec![1.5, 0.0, 0.0, 0.5, -0.5, -0.5])?;
    let near = Vector::new(vec![1.0, 0.0, 0.0, 0.0, 0.0, 0.0])?;
    let ball = OpenBall {
        center: far.clone(),
        radius: 1.0,
    };
    let w = interpolation_witness(&fiber, 1.0, 2.0, &ball, &far, &near, &tol)?;
    println!("fiber interpolation: t0 = {}, value {}", w.t0, w.norm);

    let inst = PsiInstance::delta(orthant_pair(2), NormSpec::l1())?;
    let x = Vector::new(vec![1.0, 0.0])?;
    let z = Vector::new(vec![0.8, 0.2])?;
    let t = transport_witness(&inst, 1.0, &x, &z, 1e-6, &tol)?;
    println!("transport: v = {:?} with value {} <= {}", t.v.point.as_slice(), t.v.value, t.bound);
    println!("           y + v = {:?}", t.combined.point.as_slice());
    Ok(())
}
