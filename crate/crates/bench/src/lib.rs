//! Fixed workloads shared by the benchmarks.

use quiddity::{enumerate_quiddities, EnumSpec, Generator, Quiddity, WorkLimit};

/// Canonical quiddities of one size, used as decomposition inputs.
pub fn sample(gen: Generator, size: usize, bound: u32) -> Vec<Quiddity> {
    enumerate_quiddities(
        &EnumSpec::new(gen, size, bound).canonical(),
        WorkLimit::default(),
    )
    .expect("benchmark workload fits the default work limit")
}

/// The generators benchmarked for enumeration, one per ring kind.
pub fn generators() -> [Generator; 4] {
    [
        Generator::integers(),
        Generator::sqrt(2),
        Generator::isqrt(1),
        Generator::alpha(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn workloads_are_nonempty() {
        for gen in generators() {
            assert!(!sample(gen, 4, 2).is_empty(), "{gen}");
        }
    }
}
