//! Benchmark fixtures shared by the criterion benches.

use std::sync::Arc;

use homlie_core::poly::int;
use homlie_core::{adjoint, catalog, cur_algebra, Cochain, ConformalAlgebra, Parity};
use rand::SeedableRng;

pub fn ns() -> Arc<ConformalAlgebra> {
    Arc::new(catalog::ns_algebra())
}

pub fn heisenberg() -> Arc<ConformalAlgebra> {
    Arc::new(cur_algebra(&catalog::odd_heisenberg(int(-1), int(-1))).expect("fixture"))
}

/// A seeded random cochain with values in the adjoint representation.
pub fn random_cochain(alg: &Arc<ConformalAlgebra>, arity: usize, seed: u64) -> Cochain {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    Cochain::random(Arc::new(adjoint(alg)), arity, Parity::Even, 2, &mut rng).expect("finite-order twist")
}
