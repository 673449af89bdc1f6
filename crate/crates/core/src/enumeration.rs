//! Solutions of `Σ ε_j ζ_m^j = 0` and their classes under shift and flip.
//!
//! Internally a sign vector of length `m` is packed into an `m`-bit key with
//! `ε_1` in the most significant position and `-1 ↦ 1`, so that integer order
//! on keys is the lexicographic order used for canonical representatives.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclotomic::{SignSumReducer, SignVector};

/// Largest `m` accepted by the exhaustive enumerator.
pub const MAX_ENUMERATION_M: usize = 30;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("m = {0} exceeds the enumeration cap of {MAX_ENUMERATION_M}")]
    MTooLarge(usize),
    #[error("m = {0} is below 3")]
    MTooSmall(usize),
}

/// `S(ε) = (ε_2, …, ε_m, -ε_1)`.
pub fn shift(eps: &SignVector) -> SignVector {
    let s = eps.signs();
    let mut out = s[1..].to_vec();
    out.push(-s[0]);
    SignVector::from_raw(out)
}

/// `R(ε) = (ε_m, …, ε_1)`.
pub fn flip(eps: &SignVector) -> SignVector {
    let mut out = eps.signs().to_vec();
    out.reverse();
    SignVector::from_raw(out)
}

fn mask(m: usize) -> u64 {
    if m == 64 {
        u64::MAX
    } else {
        (1u64 << m) - 1
    }
}

pub(crate) fn key_of(eps: &SignVector) -> u64 {
    eps.signs()
        .iter()
        .fold(0u64, |acc, &s| acc << 1 | u64::from(s < 0))
}

pub(crate) fn sign_of_key(m: usize, key: u64) -> SignVector {
    SignVector::from_raw(
        (0..m)
            .map(|j| if key >> (m - 1 - j) & 1 == 0 { 1 } else { -1 })
            .collect(),
    )
}

/// Enumeration index (bit `j` ↔ `ε_{j+1}`) to key (`ε_1` most significant).
fn key_of_index(m: usize, index: u64) -> u64 {
    index.reverse_bits() >> (64 - m)
}

fn shift_key(m: usize, key: u64) -> u64 {
    let first = key >> (m - 1) & 1;
    (key << 1 & mask(m)) | (first ^ 1)
}

fn flip_key(m: usize, key: u64) -> u64 {
    key.reverse_bits() >> (64 - m)
}

/// Sorted, deduplicated keys of `R^a S^b (key)`, `a ∈ {0,1}`, `b ∈ [0, 2m)`.
fn orbit_keys(m: usize, key: u64) -> Vec<u64> {
    let mut out = Vec::with_capacity(4 * m);
    for start in [key, flip_key(m, key)] {
        let mut k = start;
        for _ in 0..2 * m {
            out.push(k);
            k = shift_key(m, k);
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Orbit of `eps` under the group generated by shift and flip.
pub fn orbit(eps: &SignVector) -> Vec<SignVector> {
    let m = eps.m();
    orbit_keys(m, key_of(eps))
        .into_iter()
        .map(|k| sign_of_key(m, k))
        .collect()
}

/// Lexicographic minimum of the orbit, comparing with `+1 < -1`.
pub fn canonical_form(eps: &SignVector) -> SignVector {
    let m = eps.m();
    sign_of_key(m, orbit_keys(m, key_of(eps))[0])
}

/// One equivalence class of solutions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignClass {
    pub canonical: SignVector,
    pub orbit_size: usize,
    pub raw_members: Option<Vec<SignVector>>,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct EnumerateOptions {
    /// Keep every raw solution, grouped under its class.
    pub keep_members: bool,
}

fn check_m(m: usize) -> Result<(), EnumerationError> {
    if m < 3 {
        return Err(EnumerationError::MTooSmall(m));
    }
    if m > MAX_ENUMERATION_M {
        return Err(EnumerationError::MTooLarge(m));
    }
    Ok(())
}

/// Enumeration indices `i ∈ [0, 2^m)` whose sign vector solves the vanishing
/// sum, ascending.
///
/// The index range is cut into aligned blocks; inside a block the low bits
/// are walked in Gray-code order so each step flips one sign and updates the
/// residue modulo `Φ_{2m}` in `O(φ(2m))`.
pub fn solution_indices(m: usize) -> Result<Vec<u64>, EnumerationError> {
    check_m(m)?;
    let reducer = SignSumReducer::new(m).expect("Φ_{2m} for m within the cap");
    let low_bits = m.min(14);
    let blocks = 1u64 << (m - low_bits);
    let mut found: Vec<u64> = (0..blocks)
        .into_par_iter()
        .flat_map_iter(|block| {
            let base = block << low_bits;
            scan_block(&reducer, base, low_bits)
        })
        .collect();
    found.sort_unstable();
    Ok(found)
}

fn scan_block(reducer: &SignSumReducer, base: u64, low_bits: usize) -> Vec<u64> {
    let mut acc = reducer.residue_of_index(base);
    let mut index = base;
    let mut hits = Vec::new();
    if acc.iter().all(|&c| c == 0) {
        hits.push(index);
    }
    for step in 1u64..(1 << low_bits) {
        let bit = step.trailing_zeros() as usize;
        index ^= 1 << bit;
        // ε_{bit+1} went from +1 to -1 (bit now set) or back.
        let delta: i64 = if index >> bit & 1 == 1 { -2 } else { 2 };
        for (a, &r) in acc.iter_mut().zip(reducer.residue(bit)) {
            *a += delta * r;
        }
        if acc.iter().all(|&c| c == 0) {
            hits.push(index);
        }
    }
    hits
}

/// All solution classes for `m`, sorted by canonical representative.
pub fn enumerate_solution_classes(
    m: usize,
    options: EnumerateOptions,
) -> Result<Vec<SignClass>, EnumerationError> {
    let indices = solution_indices(m)?;
    let mut classes: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for index in indices {
        let key = key_of_index(m, index);
        let canon = orbit_keys(m, key)[0];
        classes.entry(canon).or_default().push(key);
    }
    Ok(classes
        .into_iter()
        .map(|(canon, mut members)| {
            members.sort_unstable();
            SignClass {
                canonical: sign_of_key(m, canon),
                orbit_size: orbit_keys(m, canon).len(),
                raw_members: options
                    .keep_members
                    .then(|| members.iter().map(|&k| sign_of_key(m, k)).collect()),
            }
        })
        .collect())
}

pub fn is_power_of_two(m: usize) -> bool {
    m.is_power_of_two()
}

/// Class counts for powers of two established outside this enumeration.
pub fn literature_count(m: usize) -> Option<usize> {
    match m {
        4 | 8 => Some(1),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCount {
    pub m: usize,
    pub count: usize,
    /// Set when `m` is a power of two: the enumeration then finds nothing,
    /// and any optimal configuration count comes from the literature.
    pub power_of_two: bool,
    pub literature_count: Option<usize>,
}

pub fn class_count(m: usize) -> Result<ClassCount, EnumerationError> {
    let count = enumerate_solution_classes(m, EnumerateOptions::default())?.len();
    Ok(ClassCount {
        m,
        count,
        power_of_two: is_power_of_two(m),
        literature_count: literature_count(m),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSummary {
    pub canonical: SignVector,
    pub orbit_size: usize,
    pub raw_count: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub members: Option<Vec<SignVector>>,
}

/// JSON shape of an enumeration result.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassReport {
    pub m: usize,
    pub classes: Vec<ClassSummary>,
    pub raw_total: usize,
}

impl ClassReport {
    /// Every member of a class is a solution, so `raw_count = orbit_size`.
    pub fn new(m: usize, classes: &[SignClass]) -> Self {
        let classes: Vec<ClassSummary> = classes
            .iter()
            .map(|c| ClassSummary {
                canonical: c.canonical.clone(),
                orbit_size: c.orbit_size,
                raw_count: c.raw_members.as_ref().map_or(c.orbit_size, Vec::len),
                members: c.raw_members.clone(),
            })
            .collect();
        let raw_total = classes.iter().map(|c| c.raw_count).sum();
        Self {
            m,
            classes,
            raw_total,
        }
    }
}
