//! `(P1 + P2) + P3` in one symmetric step, with its coefficients and the
//! slope identity `c2 (alpha + alpha~) = V`.

use ecsum::curve::mordell17;
use ecsum::sum3::{slope_sum, sum3_symmetric, triple_coeffs};
use ecsum::{Curve, FieldDescriptor, Point};

fn show(curve: &Curve, p: &[Point; 3]) -> ecsum::Result<()> {
    let t = triple_coeffs(&p[0], &p[1], &p[2])?;
    let closed = sum3_symmetric(curve, &p[0], &p[1], &p[2])?;
    let folded = curve.add(&curve.add(&p[0], &p[1])?, &p[2])?;
    let s = slope_sum(curve, &p[0], &p[1], &p[2])?;
    println!("{curve}");
    println!("  points {} {} {}", p[0], p[1], p[2]);
    println!("  V = {}, c0 = {}, c1 = {}, c2 = {}", t.v, t.c0, t.c1, t.c2);
    println!("  closed form {closed}, step by step {folded}");
    println!(
        "  alpha + alpha~ = {} = V / c2 = {}",
        &s.alpha + &s.alpha_tilde,
        &t.v * &t.c2.inv()?
    );
    Ok(())
}

fn main() -> ecsum::Result<()> {
    let f5 = FieldDescriptor::prime(5)?;
    let pt = |x, y| Point::new(f5.from_i64(x), f5.from_i64(y));
    show(
        &Curve::from_i64(f5, 1, 1)?,
        &[pt(0, 1)?, pt(2, 1)?, pt(4, 2)?],
    )?;

    let (e17, base) = mordell17();
    show(&e17, &[base[0].clone(), base[2].clone(), base[4].clone()])?;

    // P1 = P2 breaks the distinct-x hypothesis
    let c = Curve::from_i64(f5, 1, 1)?;
    if let Err(e) = sum3_symmetric(&c, &pt(0, 1)?, &pt(0, 1)?, &pt(4, 2)?) {
        println!("repeated point: {e}");
    }
    Ok(())
}
