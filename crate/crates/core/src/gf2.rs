//! Polynomials over GF(2), the linear system Δ_q relating F_0, .., F_{q−2},
//! and determinants of its reduction mod 2.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::arith::{self, Int};
use crate::error::{arg, Result};
use crate::wreath::{CoeffTable, HParams};

/// Polynomial in z over GF(2), bit i of the word array holding the
/// coefficient of z^i. Trailing zero words are trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PolyBit {
    words: Vec<u64>,
}

impl PolyBit {
    pub fn zero() -> PolyBit {
        PolyBit::default()
    }

    pub fn one() -> PolyBit {
        PolyBit::monomial(0)
    }

    pub fn monomial(e: usize) -> PolyBit {
        let mut p = PolyBit { words: vec![0; e / 64 + 1] };
        p.words[e / 64] = 1 << (e % 64);
        p
    }

    pub fn from_exponents(exps: &[usize]) -> PolyBit {
        let mut p = PolyBit::zero();
        for &e in exps {
            p.flip(e);
        }
        p
    }

    pub fn flip(&mut self, e: usize) {
        if self.words.len() <= e / 64 {
            self.words.resize(e / 64 + 1, 0);
        }
        self.words[e / 64] ^= 1 << (e % 64);
        self.trim();
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn coeff(&self, e: usize) -> bool {
        self.words.get(e / 64).is_some_and(|w| w >> (e % 64) & 1 == 1)
    }

    pub fn degree(&self) -> Option<usize> {
        let w = self.words.last()?;
        Some((self.words.len() - 1) * 64 + 63 - w.leading_zeros() as usize)
    }

    pub fn exponents(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (i, &w) in self.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let b = w.trailing_zeros() as usize;
                out.push(i * 64 + b);
                w &= w - 1;
            }
        }
        out
    }

    /// Drops every term of degree above `order`.
    pub fn truncate(&self, order: usize) -> PolyBit {
        PolyBit::from_exponents(&self.exponents().into_iter().filter(|&e| e <= order).collect::<Vec<_>>())
    }

    pub fn pow(&self, k: u32) -> PolyBit {
        let mut acc = PolyBit::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn shift(&self, k: usize) -> PolyBit {
        PolyBit::from_exponents(&self.exponents().into_iter().map(|e| e + k).collect::<Vec<_>>())
    }
}

impl Add for &PolyBit {
    type Output = PolyBit;
    fn add(self, rhs: &PolyBit) -> PolyBit {
        let (long, short) = if self.words.len() >= rhs.words.len() { (self, rhs) } else { (rhs, self) };
        let mut words = long.words.clone();
        for (w, s) in words.iter_mut().zip(&short.words) {
            *w ^= s;
        }
        let mut p = PolyBit { words };
        p.trim();
        p
    }
}

impl Mul for &PolyBit {
    type Output = PolyBit;
    fn mul(self, rhs: &PolyBit) -> PolyBit {
        if self.is_zero() || rhs.is_zero() {
            return PolyBit::zero();
        }
        let mut words = vec![0u64; self.words.len() + rhs.words.len()];
        for e in self.exponents() {
            let (ws, bs) = (e / 64, e % 64);
            for (j, &w) in rhs.words.iter().enumerate() {
                words[ws + j] ^= w << bs;
                if bs > 0 {
                    words[ws + j + 1] ^= w >> (64 - bs);
                }
            }
        }
        let mut p = PolyBit { words };
        p.trim();
        p
    }
}

impl fmt::Display for PolyBit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .exponents()
            .into_iter()
            .map(|e| match e {
                0 => "1".to_string(),
                1 => "z".to_string(),
                _ => format!("z^{e}"),
            })
            .collect();
        f.write_str(&terms.join("+"))
    }
}

impl fmt::Debug for PolyBit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyBit({self})")
    }
}

/// Polynomial in z with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntPoly {
    terms: BTreeMap<usize, Int>,
}

impl IntPoly {
    pub fn add_term(&mut self, coeff: Int, e: usize) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_default();
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn coeff(&self, e: usize) -> Int {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Int)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn mod2(&self) -> PolyBit {
        let exps: Vec<usize> = self.terms.iter().filter(|(_, c)| c.is_odd()).map(|(e, _)| *e).collect();
        PolyBit::from_exponents(&exps)
    }

    pub fn from_terms(terms: &[(i64, usize)]) -> IntPoly {
        let mut p = IntPoly::default();
        for &(c, e) in terms {
            p.add_term(BigInt::from(c), e);
        }
        p
    }
}

/// Square matrix of GF(2) polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatPolyBit {
    rows: Vec<Vec<PolyBit>>,
}

impl MatPolyBit {
    pub fn new(rows: Vec<Vec<PolyBit>>) -> Result<MatPolyBit> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return arg("matrix must be square");
        }
        Ok(MatPolyBit { rows })
    }

    pub fn identity(n: usize) -> MatPolyBit {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if i == j { PolyBit::one() } else { PolyBit::zero() }).collect())
            .collect();
        MatPolyBit { rows }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &PolyBit {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<PolyBit>] {
        &self.rows
    }

    /// The matrix with one row and one column removed.
    pub fn minor(&self, row: usize, col: usize) -> MatPolyBit {
        let rows = self
            .rows
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != row)
            .map(|(_, r)| r.iter().enumerate().filter(|(j, _)| *j != col).map(|(_, p)| p.clone()).collect())
            .collect();
        MatPolyBit { rows }
    }
}

/// Laplace expansion down the rows, memoised on the set of unused columns.
/// Signs vanish in characteristic 2.
pub fn det_gf2(m: &MatPolyBit) -> PolyBit {
    let n = m.dim();
    assert!(n < 64, "dimension too large for column bitmasks");
    fn rec(m: &MatPolyBit, row: usize, cols: u64, memo: &mut HashMap<u64, PolyBit>) -> PolyBit {
        if row == m.dim() {
            return PolyBit::one();
        }
        if let Some(v) = memo.get(&cols) {
            return v.clone();
        }
        let mut acc = PolyBit::zero();
        let mut rest = cols;
        while rest != 0 {
            let j = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let entry = m.get(row, j);
            if entry.is_zero() {
                continue;
            }
            let sub = rec(m, row + 1, cols & !(1 << j), memo);
            acc = &acc + &(entry * &sub);
        }
        memo.insert(cols, acc.clone());
        acc
    }
    let full = if n == 0 { 0 } else { u64::MAX >> (64 - n) };
    rec(m, 0, full, &mut HashMap::new())
}

pub fn minor_gf2(m: &MatPolyBit, row: usize, col: usize) -> PolyBit {
    det_gf2(&m.minor(row, col))
}

/// The thirteen shapes an entry ω_{κ,λ} of Δ_q can take.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OmegaCase {
    Corner,
    TopRow,
    SecondRowFirst,
    SecondRow,
    OddFirst,
    OddInner,
    OddDiagonal,
    OddTail,
    EvenFirst,
    EvenInner,
    EvenDiagonal,
    EvenTail,
    Zero,
}

impl OmegaCase {
    pub const ALL: [OmegaCase; 13] = [
        OmegaCase::Corner,
        OmegaCase::TopRow,
        OmegaCase::SecondRowFirst,
        OmegaCase::SecondRow,
        OmegaCase::OddFirst,
        OmegaCase::OddInner,
        OmegaCase::OddDiagonal,
        OmegaCase::OddTail,
        OmegaCase::EvenFirst,
        OmegaCase::EvenInner,
        OmegaCase::EvenDiagonal,
        OmegaCase::EvenTail,
        OmegaCase::Zero,
    ];
}

/// Which case of the ω-table governs entry (κ, λ) of Δ_q.
pub fn omega_case(q: u64, kappa: u64, lambda: u64) -> OmegaCase {
    use OmegaCase::*;
    let (k, l) = (kappa, lambda);
    if k > q - 2 || l > q - 2 {
        return Zero;
    }
    match k {
        0 if l == 0 => Corner,
        0 if l <= (q - 3) / 2 => TopRow,
        1 if l == 0 => SecondRowFirst,
        1 if l <= (q - 1) / 2 => SecondRow,
        0 | 1 => Zero,
        _ if k % 2 == 1 => {
            if l == 0 {
                OddFirst
            } else if 2 * l + 3 <= k {
                OddInner
            } else if 2 * l == k - 1 {
                OddDiagonal
            } else if 2 * l >= k + 1 && 2 * l <= k + q - 2 {
                OddTail
            } else {
                Zero
            }
        }
        _ => {
            if k > q - 3 {
                Zero
            } else if l == 0 {
                EvenFirst
            } else if 2 * l <= k - 2 {
                EvenInner
            } else if 2 * l == k {
                EvenDiagonal
            } else if 2 * l >= k + 2 && 2 * l <= k + q - 3 {
                EvenTail
            } else {
                Zero
            }
        }
    }
}

/// Entry ω_{κ,λ} of Δ_q with integer coefficients.
pub fn omega(q: u64, kappa: u64, lambda: u64, hp: HParams, tab: &CoeffTable) -> IntPoly {
    use OmegaCase::*;
    let (k, l) = (kappa as i64, lambda as i64);
    let qi = q as i64;
    let d = |kk: i64, nu: i64| tab.d_or_zero(kk, nu);
    let b = BigInt::from(hp.b());
    let h = BigInt::from(hp.h());
    let e = |x: i64| -> usize {
        assert!(x >= 0, "negative exponent in ω_({kappa},{lambda})");
        x as usize
    };
    let mut p = IntPoly::default();
    match omega_case(q, kappa, lambda) {
        Corner => {
            p.add_term(d(qi - 1, 0), e(qi));
            p.add_term(BigInt::from(-1), 0);
        }
        TopRow => p.add_term(d(qi - 1, l), e(l + qi)),
        SecondRowFirst => {
            p.add_term(d(qi, 0), e(qi - 1));
            p.add_term(b, 0);
        }
        SecondRow => p.add_term(d(qi, l), e(l + qi - 1)),
        OddFirst | EvenFirst => {
            p.add_term(d(k - 1, 0) * &h, e(k - 2));
            p.add_term(&b * d(k, 0), e(k - 1));
            p.add_term(d(k + qi - 1, 0), e(k + qi - 2));
        }
        OddInner | EvenInner => {
            p.add_term(-(d(k - 1, l) * &h * (l - 1) + d(k - 1, l - 1)), e(k + l - 2));
            p.add_term(&b * d(k, l), e(k + l - 1));
            p.add_term(d(k + qi - 1, l), e(k + l + qi - 2));
        }
        OddDiagonal => {
            p.add_term(-d(k - 1, (k - 3) / 2), e((3 * k - 5) / 2));
            p.add_term(&b * d(k, (k - 1) / 2), e((3 * k - 3) / 2));
            p.add_term(d(k + qi - 1, (k - 1) / 2), e((3 * k + 2 * qi - 5) / 2));
        }
        EvenDiagonal => {
            p.add_term(-d(k - 1, (k - 2) / 2), e((3 * k - 4) / 2));
            p.add_term(d(k + qi - 1, k / 2), e((3 * k + 2 * qi - 4) / 2));
        }
        OddTail | EvenTail => p.add_term(d(k + qi - 1, l), e(k + l + qi - 2)),
        Zero => {}
    }
    p
}

/// Δ_q with integer polynomial entries, rows κ and columns λ in 0 ..= q−2.
pub fn build_delta_int(q: u64, hp: HParams) -> Result<Vec<Vec<IntPoly>>> {
    arith::check_odd_prime(q)?;
    let tab = CoeffTable::new(hp, 2 * q as usize);
    Ok((0..=q - 2)
        .map(|k| (0..=q - 2).map(|l| omega(q, k, l, hp, &tab)).collect())
        .collect())
}

/// Δ_q reduced mod 2.
pub fn build_delta(q: u64, hp: HParams) -> Result<MatPolyBit> {
    let rows = build_delta_int(q, hp)?
        .into_iter()
        .map(|r| r.into_iter().map(|p| p.mod2()).collect())
        .collect();
    MatPolyBit::new(rows)
}

/// The stated value of det Δ_q mod 2.
pub fn predicted_det(q: u64, h_even: bool) -> PolyBit {
    let base = ((3 * q * q + 12 - 11 * q) / 2) as usize;
    if h_even || q % 4 == 1 {
        PolyBit::monomial(base)
    } else {
        PolyBit::from_exponents(&[base, ((3 * q * q - 8 * q + 9) / 2) as usize])
    }
}

/// The stated value of the minor Δ_{κ,0} mod 2 (row κ and column 0 deleted).
pub fn predicted_minor(q: u64, kappa: u64, h_even: bool) -> PolyBit {
    if kappa == 0 {
        return PolyBit::monomial(((3 * q * q + 12 - 11 * q) / 2) as usize);
    }
    if h_even || kappa == 1 || q % 4 == 1 || kappa % 4 == 1 {
        return PolyBit::zero();
    }
    let base = 3 * q * q - 8 * q;
    let kp = (kappa - 2) / 4;
    let e = match kappa % 4 {
        2 => base + 5 - 12 * kp,
        3 => base + 3 - 12 * kp,
        _ => base + 1 - 12 * kp,
    };
    PolyBit::monomial((e / 2) as usize)
}
