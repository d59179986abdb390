//! Sums of n points from the cofactors of one determinant, compared with
//! the left fold, plus a JSON input document.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ecsum::multisum::{iterated_sum, multisum_with_cofactors};
use ecsum::wire::SumInput;
use ecsum::{Curve, Error, FieldDescriptor};

fn main() -> ecsum::Result<()> {
    let f = FieldDescriptor::prime(10007)?;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let curve = Curve::random(f, &mut rng);
    println!("{curve}");
    for n in 2..=7 {
        let pts: Vec<_> = (0..n)
            .map(|_| curve.random_point_signed(&mut rng).unwrap())
            .collect();
        match multisum_with_cofactors(&curve, &pts) {
            Ok((sum, cof)) => {
                let c: Vec<String> = cof.as_slice().iter().map(ToString::to_string).collect();
                println!(
                    "n={n}: {sum} (fold {}), c = [{}]",
                    iterated_sum(&curve, &pts)?,
                    c.join(", ")
                );
            }
            Err(Error::NonGeneric(h)) => println!(
                "n={n}: non-generic ({h}), fold gives {}",
                iterated_sum(&curve, &pts)?
            ),
            Err(e) => return Err(e),
        }
    }

    let doc = r#"{"curve": {"a": "0", "b": "17", "field": "Q"},
                  "points": [{"x": "-2", "y": "3"}, {"x": "-1", "y": "4"}, {"x": "2", "y": "5"}, {"x": "8", "y": "23"}]}"#;
    let (e17, pts) = SumInput::from_json(doc)?.decode()?;
    let (sum, cof) = multisum_with_cofactors(&e17, &pts)?;
    println!(
        "{e17}: sum of four integral points = {sum}, d1 = {}",
        cof.d(1)
    );
    Ok(())
}
