//! The seeded associativity suite with its special configurations, over a
//! small and a larger prime.

use ecsum::suites::{assoc_suite, PointSource};
use ecsum::FieldDescriptor;

fn main() -> ecsum::Result<()> {
    for p in [10007, 1_000_003] {
        let report = assoc_suite(&PointSource::for_field(FieldDescriptor::prime(p)?), 6000, 7);
        print!("{report}");
    }
    Ok(())
}
