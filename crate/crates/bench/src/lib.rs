//! Fixtures shared by the benchmarks.

use std::sync::Arc;

use alcove_calculus::{LeviDatum, RootSystem, Weight};

pub fn levi(type_spec: &str, levi: &[usize], p: i64) -> LeviDatum {
    let rs = Arc::new(RootSystem::from_spec(type_spec).expect("valid type"));
    LeviDatum::new(rs, levi, p).expect("valid configuration")
}

/// Every weight with coordinates in `[-radius, radius]`.
pub fn weights(rank: usize, radius: i64) -> Vec<Weight> {
    alcove_calculus::oracle::box_weights(rank, radius)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_build() {
        assert_eq!(levi("B2", &[0], 5).order_wi(), 2);
        assert_eq!(weights(2, 1).len(), 9);
    }
}
