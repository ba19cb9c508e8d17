//! Closed-form subgroup counts for C2 * Cq.
//!
//! The core quantity is M_q(qk; e, k): the number of connected graphs built
//! from k labelled, oriented q-gons and e further edges forming a partial
//! matching of the qk vertices. It is the connected part of the plain
//! matching counts, and every other count is a factorial multiple of it.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{self, div_exact, Int, Nat, Rational};
use crate::error::{arg, Result};
use crate::types::{feasible_reps, kurosh_type, RepType, TypeCensus};

/// Memoising evaluator. Not shared across threads; parallel sweeps give each
/// worker its own.
#[derive(Debug, Default, Clone)]
pub struct Census {
    /// Per q, the rows M_q(qk; ·, k) for k = 1, 2, ...
    core: HashMap<u64, Vec<Arc<Vec<Nat>>>>,
}

fn poly_mul(a: &[Nat], b: &[Nat]) -> Vec<Nat> {
    let mut out = vec![Nat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Partial matchings of qr points by number of edges:
/// (qr)! / (2^α α! (qr−2α)!) for α = 0 ..= qr/2.
pub fn matching_poly(q: u64, r: u64) -> Vec<Nat> {
    let n = q * r;
    (0..=n / 2)
        .map(|a| arith::falling(n, 2 * a) / (arith::pow(2, a) * arith::factorial(a)))
        .collect()
}

/// M_q(qk; e, k) for k = 1 ..= k_max, all e = 0 ..= qk/2, extending `rows`.
///
/// With a_r = P_r the matchings on r q-gons, the alternating sum over
/// compositions of k is k! [x^k] log Σ_r a_r x^r / r!, so the connected
/// counts l_k obey l_n = a_n − Σ_{j<n} C(n−1, j−1) l_j a_{n−j}.
fn extend_core_rows(q: u64, rows: &mut Vec<Arc<Vec<Nat>>>, k_max: u64) {
    let have = rows.len() as u64;
    if have >= k_max {
        return;
    }
    let p: Vec<Vec<Nat>> = (0..=k_max).map(|r| matching_poly(q, r)).collect();
    for n in have + 1..=k_max {
        let mut acc: Vec<Int> = p[n as usize].iter().map(|c| Int::from(c.clone())).collect();
        for j in 1..n {
            let c = arith::binomial(n as i64 - 1, j as i64 - 1);
            let term = poly_mul(&rows[j as usize - 1], &p[(n - j) as usize]);
            for (a, t) in acc.iter_mut().zip(term) {
                *a -= Int::from(t * &c);
            }
        }
        let row = acc
            .into_iter()
            .enumerate()
            .map(|(e, v)| {
                assert!(!v.is_negative(), "M_core({q},{n},{e}) is negative");
                v.to_biguint().unwrap()
            })
            .collect();
        rows.push(Arc::new(row));
    }
}

/// M_q(qk; k−1, k) from the tree formula: q^k times the k−2 factors
/// (q−1)k, (q−1)k − 1, ..., (q−2)k + 3. Equal to 1 at k = 1.
pub fn m_tree(q: u64, k: u64) -> Result<Nat> {
    if k == 0 {
        return arg("k must be positive");
    }
    if k == 1 {
        return Ok(Nat::one());
    }
    let top = (q - 1) * k;
    Ok(arith::pow(q, k) * arith::falling(top, k - 2))
}

impl Census {
    pub fn new() -> Census {
        Census::default()
    }

    fn core_row(&mut self, q: u64, k: u64) -> Arc<Vec<Nat>> {
        let rows = self.core.entry(q).or_default();
        extend_core_rows(q, rows, k);
        rows[k as usize - 1].clone()
    }

    /// M_q(qk; e, k) for k ≥ 1, 0 ≤ e ≤ qk/2.
    pub fn m_core(&mut self, q: u64, k: u64, e: u64) -> Result<Nat> {
        arith::check_odd_prime(q)?;
        if k == 0 {
            return arg("M_core needs k >= 1");
        }
        if 2 * e > q * k {
            return arg(format!("M_core({q},{k},{e}): e exceeds qk/2"));
        }
        Ok(self.core_row(q, k)[e as usize].clone())
    }

    /// All of M_q(qk; e, k), e = 0 ..= qk/2.
    pub fn m_core_all(&mut self, q: u64, k: u64) -> Result<Vec<Nat>> {
        arith::check_odd_prime(q)?;
        if k == 0 {
            return arg("M_core needs k >= 1");
        }
        Ok(self.core_row(q, k).to_vec())
    }

    /// M_q(n; m1, m2): connected graphs with m2 labelled q-gons and m1 red
    /// edges on n vertices. Out-of-range arguments give 0.
    pub fn m_general(&mut self, q: u64, n: u64, m1: u64, m2: u64) -> Nat {
        if m2 == 0 {
            return Nat::from(((n, m1) == (1, 0) || (n, m1) == (2, 1)) as u8);
        }
        if q * m2 > n || 2 * m1 > n {
            return Nat::zero();
        }
        // red edges left among the q-gon vertices once each extra vertex is attached
        let Some(e) = (m1 + q * m2).checked_sub(n) else {
            return Nat::zero();
        };
        if 2 * e > q * m2 {
            return Nat::zero();
        }
        let top = 2 * n - 2 * m1 - q * m2;
        arith::falling(top, top - (n - 2 * m1)) * &self.core_row(q, m2)[e as usize]
    }

    /// Subgroups of index n whose representation type is (m1, m2).
    pub fn s_type(&mut self, q: u64, n: u64, m1: u64, m2: u64) -> Nat {
        if q * m2 > n {
            return Nat::zero();
        }
        let m = self.m_general(q, n, m1, m2);
        if m.is_zero() {
            return m;
        }
        let den = arith::pow(q, m2) * arith::factorial(m2) * arith::factorial(n - q * m2);
        div_exact(&(m * n), &den, "s_type")
    }

    /// Subgroups of index qk with μ = 0.
    pub fn m_total(&mut self, q: u64, k: u64) -> Result<Nat> {
        let row = self.m_core_all(q, k)?;
        let sum: Nat = row.iter().sum();
        Ok(div_exact(&sum, &(arith::pow(q, k - 1) * arith::factorial(k - 1)), "M_total"))
    }

    /// Number of subgroups of index n.
    pub fn s_total(&mut self, q: u64, n: u64) -> Result<Nat> {
        arith::check_odd_prime(q)?;
        if n == 0 {
            return arg("index n must be positive");
        }
        if n <= 2 {
            return Ok(Nat::one());
        }
        let mut total = Nat::zero();
        for k in 1..=n / q {
            let row = self.core_row(q, k);
            let den = arith::pow(q, k) * arith::factorial(k);
            for e in 0..=(n / 2).min(q * k / 2) {
                let c = arith::binomial((q * k - 2 * e) as i64, (n - q * k) as i64);
                if c.is_zero() || row[e as usize].is_zero() {
                    continue;
                }
                total += div_exact(&(c * &row[e as usize] * n), &den, "s_total term");
            }
        }
        Ok(total)
    }

    /// Subgroups with λ = ν = 0; zero unless 2(q−1) divides n − 2.
    pub fn n_count(&mut self, q: u64, n: u64) -> Nat {
        if n % 2 != 0 || n < 2 || (n - 2) % (2 * (q - 1)) != 0 {
            return Nat::zero();
        }
        self.s_type(q, n, n / 2, (n - 2) / (2 * (q - 1)))
    }

    /// Free subgroups, λ = μ = 0; zero unless 2q divides n.
    pub fn f_count(&mut self, q: u64, n: u64) -> Nat {
        if n == 0 || n % (2 * q) != 0 {
            return Nat::zero();
        }
        self.s_type(q, n, n / 2, n / q)
    }

    /// Subgroups with μ = 0, summed type by type.
    pub fn mq_count(&mut self, q: u64, n: u64) -> Nat {
        let mut total = Nat::zero();
        for rep in feasible_reps(q, n) {
            if kurosh_type(q, n, rep).is_some_and(|t| t.mu == 0) {
                total += self.s_type(q, n, rep.m1, rep.m2);
            }
        }
        total
    }

    /// Every type with a non-zero count at index n.
    pub fn types(&mut self, q: u64, n: u64) -> Result<TypeCensus> {
        arith::check_odd_prime(q)?;
        if n == 0 {
            return arg("index n must be positive");
        }
        let mut census = TypeCensus { q, n, counts: Default::default() };
        for RepType { m1, m2 } in feasible_reps(q, n) {
            let c = self.s_type(q, n, m1, m2);
            if !c.is_zero() {
                census.counts.insert(kurosh_type(q, n, RepType { m1, m2 }).unwrap(), c);
            }
        }
        Ok(census)
    }
}

/// 3^k (2k)! / ((k−1)! (k+2)!): tree-case count at q = 3 divided by (k−1)!.
pub fn q3_tree(k: u64) -> Nat {
    div_exact(
        &(arith::pow(3, k) * arith::factorial(2 * k)),
        &(arith::factorial(k - 1) * arith::factorial(k + 2)),
        "tree count at q = 3",
    )
}

/// 2^(2k−2) 3^k: M_3(3k; k, k)/(k−1)!.
pub fn q3_one_cycle(k: u64) -> Nat {
    arith::pow(2, 2 * k - 2) * arith::pow(3, k)
}

/// Right-hand side for M_3(3k; e, k)/(k−1)! with k < e < 3k/2, given f_3(6(e−k)).
pub fn q3_general(k: u64, e: u64, f: &Nat) -> Rational {
    assert!(k < e && 2 * e < 3 * k);
    let mut num = arith::pow(2, 3 * k - 2 * e - 1) * arith::pow(3, k) * k * f;
    if 2 * e + 2 <= 3 * k {
        for l in 0..=(3 * k - 2 * e - 2) {
            num *= 3 * k - e - 2 * l - 2;
        }
    }
    let den = arith::factorial(3 * k - 2 * e);
    Rational::new(BigInt::from(num), BigInt::from(den))
}
