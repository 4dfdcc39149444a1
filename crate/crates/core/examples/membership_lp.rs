//! Cone membership with certificates, and the simplex solver underneath.

use conormal::cones::{cone_membership, is_proper, PolyhedralCone};
use conormal::geometry::{Tolerance, Vector};
use conormal::lp::{solve_lp, LpBuilder};

fn main() -> conormal::Result<()> {
    let tol = Tolerance::default();
    let wedge = PolyhedralCone::new(
        "wedge",
        vec![Vector::new(vec![1.0, 1.0])?, Vector::new(vec![1.0, -1.0])?],
    )?;
    for p in [[2.0, 0.5], [-1.0, 0.0]] {
        let x = Vector::new(p.to_vec())?;
        let m = cone_membership(&wedge, &x, &tol)?;
        println!("{p:?} in wedge: {} coefficients {:?} separator {:?}",
            m.member, m.coefficients, m.separator.as_ref().map(|s| s.as_slice().to_vec()));
    }
    println!("wedge proper: {}", is_proper(&wedge, &tol)?.proper);

    // minimize x + 2y subject to x + y = 3, x - y = 1, x, y >= 0
    let mut b = LpBuilder::new();
    let x = b.add_var(true, 1.0);
    let y = b.add_var(true, 2.0);
    b.add_row(vec![(x, 1.0), (y, 1.0)], 3.0);
    b.add_row(vec![(x, 1.0), (y, -1.0)], 1.0);
    let out = solve_lp(&b.build()?, &tol)?;
    println!("{:?}: {:?} value {:?}", out.status, out.solution, out.value);
    Ok(())
}
