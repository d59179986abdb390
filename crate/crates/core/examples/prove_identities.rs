//! Exact symbolic checks of the built-in identities, with and without the
//! curve relations `y_i^2 = x_i^3 + a x_i + b`.

use std::time::Instant;

use ecsum::identity::{check_builtin, Budget, BuiltinIdentity};

fn main() -> ecsum::Result<()> {
    for id in BuiltinIdentity::ALL {
        for rel in [false, true] {
            let start = Instant::now();
            let holds = check_builtin(id, rel, &Budget::unlimited())?;
            println!(
                "{:<11} relations={rel:<5} {:<5} {:?}",
                id.name(),
                holds,
                start.elapsed()
            );
        }
    }
    Ok(())
}
