//! Fixed inputs shared by the benchmarks.

use twistgab::mrd::{self, EtaPicker, SubfieldChain};
use twistgab::{Elem, Field, FieldSpec, RankCode, SkewPoly};

pub fn binary_field(m: u32) -> Field {
    Field::new(FieldSpec::new(2, 1, m)).expect("valid field")
}

/// Deterministic pseudo-random elements from a linear congruential walk.
pub fn elements(field: &Field, count: usize, seed: u64) -> Vec<Elem> {
    let mut state = seed;
    (0..count)
        .map(|_| {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            field.elem((state >> 33) % field.order()).expect("in range")
        })
        .collect()
}

pub fn poly(field: &Field, degree: usize, seed: u64) -> SkewPoly {
    SkewPoly::new(field, elements(field, degree + 1, seed))
}

/// The subfield-chain code over F_{2^m} with chain (m/2, m).
pub fn chain_code(m: u32, n: usize, k: usize, t: usize) -> RankCode {
    let field = binary_field(m);
    let chain = SubfieldChain::new(vec![m / 2, m], m).expect("valid chain");
    mrd::construct_theorem2(
        &field,
        &chain,
        n,
        k,
        &[t],
        mrd::unit_lambdas(1, k),
        EtaPicker::First,
    )
    .expect("valid parameters")
}
