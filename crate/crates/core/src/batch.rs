//! Batch certification across independent instances.
//!
//! Every certifier call is a pure function of its input, so corpus sweeps
//! and multi-file CLI runs fan out across instances. With the default
//! `parallel` feature the fan-out uses rayon; without it the same entry
//! points run sequentially. Outputs keep input order either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::certificate::Certificate;
use crate::digraph::Digraph;
use crate::error::Result;

/// The pattern dispatch the CLI and the sweeps share.
pub fn certify(d: &Digraph, k1: usize, k2: usize, k3: usize) -> Result<Certificate> {
    if k2 == 1 {
        crate::certify_k1l::certify_middle_one(d, k1, k3)
    } else {
        crate::certify_klr::certify_three_blocks(d, k1, k2, k3)
    }
}

/// Certifies each instance, in input order, sequentially.
pub fn certify_many_seq(instances: &[Digraph], k1: usize, k2: usize, k3: usize) -> Vec<Result<Certificate>> {
    instances.iter().map(|d| certify(d, k1, k2, k3)).collect()
}

/// Certifies each instance, in input order, fanning out across instances
/// when the `parallel` feature is enabled.
#[cfg(feature = "parallel")]
pub fn certify_many(instances: &[Digraph], k1: usize, k2: usize, k3: usize) -> Vec<Result<Certificate>> {
    instances.par_iter().map(|d| certify(d, k1, k2, k3)).collect()
}

/// Sequential fallback used when the `parallel` feature is disabled.
#[cfg(not(feature = "parallel"))]
pub fn certify_many(instances: &[Digraph], k1: usize, k2: usize, k3: usize) -> Vec<Result<Certificate>> {
    certify_many_seq(instances, k1, k2, k3)
}

/// Applies `f` to each item, in input order, with the same fan-out rule.
#[cfg(feature = "parallel")]
pub fn map_instances<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_instances<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}
