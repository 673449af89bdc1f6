//! Exact zero test for signed sums of `2m`-th roots of unity.
//!
//! `Σ_{j=1}^m ε_j ζ^j` with `ζ = e^{iπ/m}` vanishes iff the integer polynomial
//! `Σ ε_j x^j` is divisible by `Φ_{2m}`, the minimal polynomial of `ζ`.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest cyclotomic index served by [`cyclotomic_polynomial`].
pub const MAX_CYCLOTOMIC_INDEX: u32 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CyclotomicError {
    #[error("cyclotomic index {0} outside 1..={MAX_CYCLOTOMIC_INDEX}")]
    IndexOutOfRange(u32),
    #[error("integer overflow in polynomial arithmetic")]
    Overflow,
    #[error("division by Φ_{divisor} left a nonzero remainder while building Φ_{n}")]
    InexactDivision { n: u32, divisor: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignError {
    #[error("sign entries must be +1 or -1, got {0}")]
    BadEntry(i64),
    #[error("sign vector length {0} is below 3")]
    TooShort(usize),
}

/// `ε ∈ {±1}^m`, `m ≥ 3`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct SignVector(Vec<i8>);

impl SignVector {
    pub fn new(signs: Vec<i8>) -> Result<Self, SignError> {
        if signs.len() < 3 {
            return Err(SignError::TooShort(signs.len()));
        }
        if let Some(&bad) = signs.iter().find(|&&s| s != 1 && s != -1) {
            return Err(SignError::BadEntry(bad as i64));
        }
        Ok(Self(signs))
    }

    /// Sign vector for enumeration index `index`: bit `j` clear means
    /// `ε_{j+1} = +1`, set means `-1`.
    pub fn from_index(m: usize, index: u64) -> Self {
        assert!((3..=64).contains(&m), "m = {m} out of range");
        Self(
            (0..m)
                .map(|j| if index >> j & 1 == 0 { 1 } else { -1 })
                .collect(),
        )
    }

    /// Inverse of [`SignVector::from_index`].
    pub fn to_index(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &s)| s < 0)
            .fold(0, |acc, (j, _)| acc | 1 << j)
    }

    pub fn m(&self) -> usize {
        self.0.len()
    }

    pub fn signs(&self) -> &[i8] {
        &self.0
    }

    pub fn negated(&self) -> Self {
        Self(self.0.iter().map(|s| -s).collect())
    }

    pub(crate) fn from_raw(signs: Vec<i8>) -> Self {
        debug_assert!(signs.iter().all(|s| s.abs() == 1));
        Self(signs)
    }
}

impl TryFrom<Vec<i64>> for SignVector {
    type Error = SignError;
    fn try_from(v: Vec<i64>) -> Result<Self, SignError> {
        if let Some(&bad) = v.iter().find(|&&s| s != 1 && s != -1) {
            return Err(SignError::BadEntry(bad));
        }
        Self::new(v.into_iter().map(|s| s as i8).collect())
    }
}

impl From<SignVector> for Vec<i64> {
    fn from(s: SignVector) -> Self {
        s.0.into_iter().map(i64::from).collect()
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", if *s > 0 { "+1" } else { "-1" })?;
        }
        write!(f, ")")
    }
}

/// `Φ_n` with integer coefficients in ascending degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicPoly {
    n: u32,
    coeffs: Vec<i64>,
}

impl CyclotomicPoly {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

fn memo() -> &'static Mutex<HashMap<u32, Arc<CyclotomicPoly>>> {
    static MEMO: OnceLock<Mutex<HashMap<u32, Arc<CyclotomicPoly>>>> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// `Φ_n(x) = (x^n - 1) / Π_{d | n, d < n} Φ_d(x)`, memoized.
pub fn cyclotomic_polynomial(n: u32) -> Result<Arc<CyclotomicPoly>, CyclotomicError> {
    if n == 0 || n > MAX_CYCLOTOMIC_INDEX {
        return Err(CyclotomicError::IndexOutOfRange(n));
    }
    if let Some(p) = memo().lock().unwrap().get(&n) {
        return Ok(Arc::clone(p));
    }
    let mut quotient: Vec<i128> = vec![0; n as usize + 1];
    quotient[0] = -1;
    quotient[n as usize] = 1;
    // Largest divisors first keeps the dividend short for the small ones.
    let mut divisors: Vec<u32> = (1..n).filter(|d| n.is_multiple_of(*d)).collect();
    divisors.reverse();
    for d in divisors {
        let phi_d = cyclotomic_polynomial(d)?;
        let (q, r) = div_rem_monic(&quotient, phi_d.coeffs())?;
        if r.iter().any(|&c| c != 0) {
            return Err(CyclotomicError::InexactDivision { n, divisor: d });
        }
        quotient = q;
    }
    let coeffs = quotient
        .into_iter()
        .map(|c| i64::try_from(c).map_err(|_| CyclotomicError::Overflow))
        .collect::<Result<Vec<_>, _>>()?;
    let poly = Arc::new(CyclotomicPoly { n, coeffs });
    memo().lock().unwrap().insert(n, Arc::clone(&poly));
    Ok(poly)
}

/// Quotient and remainder of `dividend / divisor` for a monic integer divisor.
/// Both coefficient lists are ascending; the remainder has length `deg(divisor)`.
pub fn div_rem_monic(
    dividend: &[i128],
    divisor: &[i64],
) -> Result<(Vec<i128>, Vec<i128>), CyclotomicError> {
    let dd = divisor.len() - 1;
    assert_eq!(divisor[dd], 1, "divisor must be monic");
    let mut rem = dividend.to_vec();
    if rem.len() <= dd {
        rem.resize(dd, 0);
        return Ok((vec![0], rem));
    }
    let qlen = rem.len() - dd;
    let mut quot = vec![0i128; qlen];
    for k in (0..qlen).rev() {
        let lead = rem[k + dd];
        quot[k] = lead;
        if lead == 0 {
            continue;
        }
        for (i, &c) in divisor.iter().enumerate() {
            let prod = lead
                .checked_mul(c as i128)
                .ok_or(CyclotomicError::Overflow)?;
            rem[k + i] = rem[k + i]
                .checked_sub(prod)
                .ok_or(CyclotomicError::Overflow)?;
        }
    }
    rem.truncate(dd);
    Ok((quot, rem))
}

/// Exact test of `Σ_{j=1}^m ε_j ζ_m^j = 0`, `ζ_m = e^{iπ/m}`.
pub fn sign_sum_is_zero(eps: &SignVector) -> bool {
    let m = eps.m();
    let phi = cyclotomic_polynomial(2 * m as u32).expect("2m within the cyclotomic index cap");
    let mut p = vec![0i128; m + 1];
    for (j, &s) in eps.signs().iter().enumerate() {
        p[j + 1] = s as i128;
    }
    let (_, rem) = div_rem_monic(&p, phi.coeffs()).expect("sign polynomials cannot overflow");
    rem.iter().all(|&c| c == 0)
}

/// `|Σ_{j=1}^m ε_j e^{ijπ/m}|` in double precision.
pub fn sign_sum_numeric(eps: &SignVector) -> f64 {
    let m = eps.m() as f64;
    let (re, im) = eps
        .signs()
        .iter()
        .enumerate()
        .fold((0.0, 0.0), |(re, im), (j, &s)| {
            let (sn, cs) = ((j + 1) as f64 * PI / m).sin_cos();
            (re + s as f64 * cs, im + s as f64 * sn)
        });
    re.hypot(im)
}

/// Residues of `x^1, …, x^m` modulo `Φ_{2m}`; `p mod Φ_{2m}` is then the
/// signed sum of the rows, which lets the enumerator update the residue
/// incrementally when a single sign flips.
#[derive(Debug, Clone)]
pub struct SignSumReducer {
    m: usize,
    residues: Vec<Vec<i64>>,
}

impl SignSumReducer {
    pub fn new(m: usize) -> Result<Self, CyclotomicError> {
        let phi = cyclotomic_polynomial(2 * m as u32)?;
        let mut residues = Vec::with_capacity(m);
        for j in 1..=m {
            let mut mono = vec![0i128; j + 1];
            mono[j] = 1;
            let (_, rem) = div_rem_monic(&mono, phi.coeffs())?;
            let rem = rem
                .into_iter()
                .map(|c| i64::try_from(c).map_err(|_| CyclotomicError::Overflow))
                .collect::<Result<Vec<_>, _>>()?;
            residues.push(rem);
        }
        Ok(Self { m, residues })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Residue dimension, `deg Φ_{2m}`.
    pub fn width(&self) -> usize {
        self.residues[0].len()
    }

    /// Residue of `x^{j+1}`.
    pub fn residue(&self, j: usize) -> &[i64] {
        &self.residues[j]
    }

    /// Residue of the sign polynomial for enumeration index `index`.
    pub fn residue_of_index(&self, index: u64) -> Vec<i64> {
        let mut acc = vec![0i64; self.width()];
        for (j, row) in self.residues.iter().enumerate() {
            let s = if index >> j & 1 == 0 { 1 } else { -1 };
            for (a, &r) in acc.iter_mut().zip(row) {
                *a += s * r;
            }
        }
        acc
    }

    pub fn is_zero_index(&self, index: u64) -> bool {
        self.residue_of_index(index).iter().all(|&c| c == 0)
    }
}
