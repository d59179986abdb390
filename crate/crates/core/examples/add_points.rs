//! The four cases of the chord-tangent law on `y^2 = x^3 + 1` over Q,
//! walking the multiples of the 6-torsion point (2, 3).

use ecsum::{Curve, FieldDescriptor, Point};

fn main() -> ecsum::Result<()> {
    let q = FieldDescriptor::Rationals;
    let curve = Curve::from_i64(q, 0, 1)?;
    let p = Point::new(q.from_i64(2), q.from_i64(3))?;
    println!("{curve}");

    let mut acc = Point::Infinity;
    for k in 1..=6 {
        let (next, case) = curve.add_traced(&acc, &p)?;
        println!("{k}P = {next:<8} ({})", case.name());
        acc = next;
    }

    let (sum, case) = curve.add_traced(&p, &curve.scalar_mul(2, &p)?)?;
    println!("P + 2P = {sum} via {}", case.name());
    println!("-P = {}, 5P = {}", p.negate(), curve.scalar_mul(5, &p)?);
    Ok(())
}
