//! `det M` vanishes at the sum of the points and not at a nearby point.
//! Points come from small multiples on `y^2 = x^3 + 17`; non-generic draws
//! are skipped.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ecsum::curve::mordell17_corpus;
use ecsum::multisum::{multisum, SumMatrix};

fn main() -> ecsum::Result<()> {
    let (curve, corpus) = mordell17_corpus(2);
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for n in 2..=5 {
        let (pts, sum) = loop {
            let pts: Vec<_> = corpus.choose_multiple(&mut rng, n).cloned().collect();
            if let Ok(sum) = multisum(&curve, &pts) {
                break (pts, sum);
            }
        };
        let wrong = curve.add(&sum, &pts[0])?;
        let det_sum = SumMatrix::new(&pts, &sum)?.det();
        let det_wrong = SumMatrix::new(&pts, &wrong)?.det();
        println!("n={n}: sum {sum}");
        println!(
            "  det M at the sum = {det_sum}, at sum + P1 zero: {}",
            det_wrong.is_zero()
        );
    }
    Ok(())
}
