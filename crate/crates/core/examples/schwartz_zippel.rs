//! Randomized identity testing mod 2^61 - 1: `det M = 0` for up to eight
//! points, and a perturbed determinant that is caught on the first trial.

use ecsum::identity::{perturbed_vanishing_program, sz_check, vanishing_program, MERSENNE_61};

fn main() -> ecsum::Result<()> {
    for n in 2..=8 {
        let r = sz_check(vanishing_program(n), 20, MERSENNE_61, n as u64)?;
        println!(
            "det M, n={n}: passed={} after {} trials ({} resamples)",
            r.passed, r.trials, r.resamples
        );
    }
    let r = sz_check(perturbed_vanishing_program(5), 20, MERSENNE_61, 0)?;
    println!(
        "perturbed, n=5: passed={} after {} trial(s)",
        r.passed, r.trials
    );
    Ok(())
}
