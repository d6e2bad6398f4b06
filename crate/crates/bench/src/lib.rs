//! Fixtures shared by the benchmarks.

use chainext_core::brst::{BracketSpec, ConstraintSystem, StructureSpec};
use chainext_core::fuzz::{random_instance, FuzzInstance};
use chainext_core::lie::{Cochain, LieAlgebra};
use chainext_core::Rat;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn fuzz_instance(seed: u64) -> FuzzInstance {
    random_instance(&mut ChaCha8Rng::seed_from_u64(seed))
}

/// Abelian³ with α1(e1, e2) = e3, α1(e1, e3) = e1.
pub fn obstructed_abelian3() -> (LieAlgebra, Cochain) {
    let one = Rat::from_integer(1.into());
    let mut a = Cochain::zero(3, 2);
    a.set(&[0, 1], 2, one.clone()).unwrap();
    a.set(&[0, 2], 0, one).unwrap();
    (LieAlgebra::abelian(3), a)
}

pub fn so3_constraints() -> ConstraintSystem {
    let br = |l: &str, r: &str, v: &str| BracketSpec { left: l.into(), right: r.into(), value: v.into() };
    let st = |a, b, c| StructureSpec { a, b, c, value: "1".into() };
    ConstraintSystem::new(
        &[],
        &["G1".into(), "G2".into(), "G3".into()],
        &[br("G1", "G2", "G3"), br("G2", "G3", "G1"), br("G3", "G1", "G2")],
        &[st(0, 1, 2), st(1, 2, 0), st(2, 0, 1)],
    )
    .unwrap()
}
