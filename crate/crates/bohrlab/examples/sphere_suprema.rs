//! Maximize posynomials over l^n_q balls with the deterministic multi-start
//! ascent, and check the corner/symmetry cases where the answer is known.

use bohrlab::domains::{
    monomial_sup, norm_compare, posynomial_sup, posynomial_sup_with, AscentConfig,
};
use bohrlab::{Exponent, LqBall, MultiIndex, Posynomial};

fn main() -> bohrlab::Result<()> {
    // single monomial r1 * r2 on the Euclidean sphere: exact value 1/2
    let exact = monomial_sup(&MultiIndex::new(vec![1, 1]), Exponent::Finite(2.0))?;
    println!("sup r1*r2 on the l^2_2 ball: {exact} (exact 1/2)");

    // a posynomial with competing terms: the ascent has to balance them
    let mut g = Posynomial::new(3);
    g.push(1.0, vec![2.0, 0.0, 0.0])?;
    g.push(1.0, vec![0.0, 2.0, 0.0])?;
    g.push(4.0, vec![1.0, 1.0, 1.0])?;
    let ball3 = LqBall::unit(3, Exponent::Finite(2.0))?;
    let sup = posynomial_sup(&g, &ball3)?;
    println!(
        "sup of a 3-term posynomial on the l^3_2 ball: {:.12} at {:?} (converged: {})",
        sup.value, sup.argmax, sup.converged
    );

    // on the polydisc the maximum always sits at the corner (1,...,1)
    let cube = LqBall::unit(3, Exponent::Infinity)?;
    let corner = g.eval(&[1.0, 1.0, 1.0]);
    let sup_cube = posynomial_sup(&g, &cube)?;
    assert!((sup_cube.value - corner).abs() < 1e-9 * corner);
    println!("polydisc sup equals the corner value: {corner}");

    // more starts buy reliability, never a different limit on these problems
    let heavy = AscentConfig {
        starts: 64,
        ..Default::default()
    };
    let sup2 = posynomial_sup_with(&g, &ball3, &heavy)?;
    println!("64-start rerun agrees to {:.2e}", (sup.value - sup2.value).abs());

    // flatness ratio ||r||_1 / (n^{1-1/s} ||r||_s): 1 iff the vector is constant
    for r in [vec![1.0, 1.0, 1.0], vec![1.0, 0.5, 0.1]] {
        let cmp = norm_compare(&r, Exponent::Finite(2.0))?;
        println!("flatness of {r:?}: {:.6}", cmp.value);
    }
    Ok(())
}
