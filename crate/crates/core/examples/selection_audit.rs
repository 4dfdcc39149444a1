//! Continuity audit and Lipschitz probe of the homogeneous selections.

use conormal::audit::{continuity_audit, lipschitz_probe};
use conormal::fixtures::{orthant_pair, three_rays};
use conormal::gauge::PsiInstance;
use conormal::geometry::{NormSpec, Tolerance};

fn main() -> conormal::Result<()> {
    let tol = Tolerance::default();

    let inst = PsiInstance::delta(three_rays(), NormSpec::l2())?;
    let r = continuity_audit(&inst, 200, 0, None, &tol)?;
    println!("three rays, l2: alpha_hat {:.6}, max local Lipschitz {:.6}", r.alpha_hat, r.max_local_lipschitz);
    for m in &r.modulus {
        println!("  h = {:e}: modulus {:e}", m.step, m.modulus);
    }
    for f in &r.flags {
        println!("  flag: {f}");
    }

    let inst = PsiInstance::delta(orthant_pair(2), NormSpec::l1())?;
    let p = lipschitz_probe(&inst, 10_000, 0, Some(1.0), &tol)?;
    if let Some(s) = &p.stats {
        println!("orthant pair, l1: quotients median {:.6} max {:.9}", s.median, s.max);
    }
    println!("verdict against 1: {:?}", p.verdict);
    println!("{}", p.caveat);
    Ok(())
}
