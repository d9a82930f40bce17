//! Verification of many independent instances.

use crate::orthocenter::OrthoConfig;
use crate::par::{map, Parallelism};
use crate::scalar::Scalar;
use crate::verdict::{Clause, Tally};
use crate::verify::{verify_instance, VerifyOptions};

/// Clauses for every configuration, in input order. Instance `i` is
/// verified with seed `opts.seed + i`.
pub fn verify_all<S: Scalar>(configs: &[OrthoConfig<S>], mode: Parallelism, opts: &VerifyOptions) -> Vec<Vec<Clause>> {
    let indexed: Vec<(usize, &OrthoConfig<S>)> = configs.iter().enumerate().collect();
    map(&indexed, mode, |(i, cfg)| {
        let o = VerifyOptions {
            seed: opts.seed.wrapping_add(*i as u64),
            ..*opts
        };
        verify_instance(cfg, &o)
    })
}

/// Verdict counts summed over a batch.
pub fn tally_all(results: &[Vec<Clause>]) -> Tally {
    results.iter().fold(Tally::default(), |acc, r| {
        let t = Tally::of(r);
        Tally {
            pass: acc.pass + t.pass,
            fail: acc.fail + t.fail,
            not_applicable: acc.not_applicable + t.not_applicable,
        }
    })
}
