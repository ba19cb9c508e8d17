//! Subgroup counts twisted by a finite group H, via the wreath product
//! H ≀ S_n.
//!
//! Only three numbers about H matter: h = |H|, a = #{x ∈ H : x² = 1} and
//! b = #{y ∈ H : y^q = 1}. A subgroup U of type (λ, μ, ν) has
//! |Hom(U, H)| = a^λ b^μ h^ν.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{self, Int, Nat, Parity, Rational};
use crate::error::{arg, Error, Result};
use crate::series::{rat, rat_nat, SeriesQ};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HParams {
    h: u64,
    a: u64,
    b: u64,
}

impl HParams {
    /// Validates a ≡ 0 (mod 2) exactly when h is even, and b odd.
    pub fn new(h: u64, a: u64, b: u64) -> Result<HParams> {
        if h == 0 || a == 0 || b == 0 {
            return arg("h, a and b must be positive");
        }
        if (a % 2 == 0) != (h % 2 == 0) {
            return arg(format!("a = {a} must be even exactly when h = {h} is"));
        }
        if b % 2 == 0 {
            return arg(format!("b = {b} must be odd"));
        }
        Ok(HParams { h, a, b })
    }

    pub fn trivial() -> HParams {
        HParams { h: 1, a: 1, b: 1 }
    }

    /// H = C_r.
    pub fn cyclic(r: u64, q: u64) -> Result<HParams> {
        if r == 0 {
            return arg("cyclic group order must be positive");
        }
        HParams::new(r, r.gcd(&2), r.gcd(&q))
    }

    pub fn h(&self) -> u64 {
        self.h
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn h_even(&self) -> bool {
        self.h % 2 == 0
    }
}

/// α_0 ..= α_{n_max}, α_{n+1} = a α_n + h n α_{n−1}.
pub fn alpha_seq(hp: HParams, n_max: usize) -> Vec<Nat> {
    let mut al = vec![Nat::one()];
    for n in 0..n_max {
        let mut next = &al[n] * hp.a;
        if n >= 1 {
            next += &al[n - 1] * (hp.h * n as u64);
        }
        al.push(next);
    }
    al
}

pub fn alpha(n: usize, hp: HParams) -> Nat {
    alpha_seq(hp, n).pop().unwrap()
}

/// β_0 ..= β_{n_max}, β_{n+1} = b β_n + h^(q−1) n!/(n−q+1)! β_{n−q+1}.
pub fn beta_seq(q: u64, hp: HParams, n_max: usize) -> Vec<Nat> {
    let hq = arith::pow(hp.h, q - 1);
    let q = q as usize;
    let mut be = vec![Nat::one()];
    for n in 0..n_max {
        let mut next = &be[n] * hp.b;
        if n + 1 >= q {
            next += &hq * arith::falling(n as u64, q as u64 - 1) * &be[n + 1 - q];
        }
        be.push(next);
    }
    be
}

pub fn beta(n: usize, q: u64, hp: HParams) -> Nat {
    beta_seq(q, hp, n).pop().unwrap()
}

/// h(n) = α_n β_n / (h^n n!) for n = 0 ..= n_max.
pub fn h_coeffs(q: u64, hp: HParams, n_max: usize) -> Vec<Rational> {
    let al = alpha_seq(hp, n_max);
    let be = beta_seq(q, hp, n_max);
    (0..=n_max)
        .map(|n| {
            let den = arith::pow(hp.h, n as u64) * arith::factorial(n as u64);
            Rational::new(BigInt::from(&al[n] * &be[n]), BigInt::from(den))
        })
        .collect()
}

pub fn h_coeff(n: usize, q: u64, hp: HParams) -> Rational {
    h_coeffs(q, hp, n).pop().unwrap()
}

/// s^H(n) for n = 0 ..= n_max (entry 0 is 0), from
/// n·h·h(n) = Σ_{k=1}^{n} s(k) h(n−k).
pub fn s_general_seq(q: u64, hp: HParams, n_max: usize) -> Result<Vec<Nat>> {
    arith::check_odd_prime(q)?;
    let hc = h_coeffs(q, hp, n_max);
    let mut s: Vec<Rational> = vec![Rational::zero()];
    let mut out = vec![Nat::zero()];
    for n in 1..=n_max {
        let mut v = &hc[n] * BigInt::from(n as u64 * hp.h);
        for k in 1..n {
            v -= &s[k] * &hc[n - k];
        }
        let as_nat = arith::rational_to_nat(&v).ok_or_else(|| {
            Error::Consistency(format!("s^H({n}) evaluated to {v}, not a natural number"))
        })?;
        s.push(v);
        out.push(as_nat);
    }
    Ok(out)
}

pub fn s_general(q: u64, hp: HParams, n: usize) -> Result<Nat> {
    if n == 0 {
        return arg("index n must be positive");
    }
    Ok(s_general_seq(q, hp, n)?.pop().unwrap())
}

/// The q = 3 recurrence: values for n ≤ 9 are closed forms, beyond that
/// each term uses the nine before it and two convolutions. Entry 0 is 0.
pub fn s3h_rec_seq(hp: HParams, n_max: usize) -> Vec<Int> {
    let (a, b, h) = (BigInt::from(hp.a), BigInt::from(hp.b), BigInt::from(hp.h));
    let a2 = &a * &a;
    let b2 = &b * &b;
    let b3 = &b2 * &b;
    let h2 = &h * &h;
    let a4 = &a2 * &a2;
    let init: Vec<Int> = vec![
        Int::zero(),
        &a * &b,
        b2.clone(),
        &a * (&a2 + &h * 3),
        &b * (&a2 + &h) * 4,
        &a * &b2 * 5,
        &a4 * 3 + &b3 * 2 + &h2 * 5 + &a2 * &h * 12,
        &a * &b * (&a2 + &h * 2) * 14,
        &b2 * (&a2 * 3 + &h * 2) * 8,
        &a * (&a4 * 3 + &b3 * 6 + &h2 * 15 + &a2 * &h * 16) * 3,
    ];
    let mut s = init;
    s.truncate(n_max + 1);
    for n in 10..=n_max {
        let mut v = &a * &s[n - 3] * 4 + &b * &s[n - 4] * 2 + (&h * n - &a2 * 3) * &s[n - 6]
            - &a * &b * &s[n - 7] * 2
            - &a * &h * (n - 6) * &s[n - 9];
        for m in 1..=n - 7 {
            v += &s[m] * &s[n - m - 6];
        }
        let mut tail = Int::zero();
        for m in 1..=n - 10 {
            tail += &s[m] * &s[n - m - 9];
        }
        v -= &a * tail;
        s.push(v);
    }
    s
}

pub fn s3h_rec(hp: HParams, n: usize) -> Result<Int> {
    if n == 0 {
        return arg("index n must be positive");
    }
    Ok(s3h_rec_seq(hp, n).pop().unwrap())
}

/// The coefficients c_k^(μ), 0 ≤ μ ≤ ⌊k/2⌋, and d_k^(ν), k ≥ 1,
/// 0 ≤ ν ≤ ⌊(k−1)/2⌋, expressing F_k through F_0, F_1 and their derivatives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffTable {
    c: Vec<Vec<Int>>,
    d: Vec<Vec<Int>>,
}

impl CoeffTable {
    pub fn new(hp: HParams, k_max: usize) -> CoeffTable {
        let (a, h) = (BigInt::from(hp.a), BigInt::from(hp.h));
        let k_max = k_max.max(2);
        let mut c: Vec<Vec<Int>> = vec![vec![Int::one()], vec![Int::zero()], vec![h.clone(), Int::one()]];
        let mut d: Vec<Vec<Int>> = vec![vec![], vec![Int::one()], vec![a.clone()]];
        for k in 2..k_max {
            let mut row = Vec::new();
            for mu in 0..=(k + 1) / 2 {
                let v = if mu == 0 {
                    &a * &c[k][0] + &h * k * &c[k - 1][0]
                } else if mu <= (k - 1) / 2 {
                    &a * &c[k][mu] + &h * (k + mu) * &c[k - 1][mu] + &c[k - 1][mu - 1]
                } else if k % 2 == 1 {
                    c[k - 1][(k - 1) / 2].clone()
                } else {
                    &a * &c[k][k / 2] + &c[k - 1][(k - 2) / 2]
                };
                row.push(v);
            }
            c.push(row);
            let mut row = Vec::new();
            for nu in 0..=k / 2 {
                let v = if nu == 0 {
                    &a * &d[k][0] + &h * (k - 1) * &d[k - 1][0]
                } else if k >= 2 && nu <= (k - 2) / 2 {
                    &a * &d[k][nu] + &h * (k + nu - 1) * &d[k - 1][nu] + &d[k - 1][nu - 1]
                } else if k % 2 == 1 {
                    &a * &d[k][(k - 1) / 2] + &d[k - 1][(k - 3) / 2]
                } else {
                    d[k - 1][(k - 2) / 2].clone()
                };
                row.push(v);
            }
            d.push(row);
        }
        CoeffTable { c, d }
    }

    pub fn k_max(&self) -> usize {
        self.c.len() - 1
    }

    pub fn c(&self, k: usize, mu: usize) -> Option<&Int> {
        self.c.get(k)?.get(mu)
    }

    pub fn d(&self, k: usize, nu: usize) -> Option<&Int> {
        self.d.get(k)?.get(nu)
    }

    /// d_k^(ν), reading indices outside the valid range as 0.
    pub fn d_or_zero(&self, k: i64, nu: i64) -> Int {
        if k < 0 || nu < 0 {
            return Int::zero();
        }
        assert!(k as usize <= self.k_max(), "d_{k} is beyond the table");
        self.d(k as usize, nu as usize).cloned().unwrap_or_default()
    }
}

pub fn coeff_c(k: usize, mu: usize, hp: HParams) -> Result<Int> {
    if mu > k / 2 {
        return arg(format!("c_{k}^({mu}) needs mu <= k/2"));
    }
    Ok(CoeffTable::new(hp, k).c(k, mu).unwrap().clone())
}

pub fn coeff_d(k: usize, nu: usize, hp: HParams) -> Result<Int> {
    if k == 0 || nu > (k - 1) / 2 {
        return arg(format!("d_{k}^({nu}) needs k >= 1 and nu <= (k-1)/2"));
    }
    Ok(CoeffTable::new(hp, k).d(k, nu).unwrap().clone())
}

/// F_k(z) = Σ_n α_n β_{n−k} / (h^(n−k) (n−k)!) z^n, for k ≥ −1.
pub fn f_series(k: i64, q: u64, hp: HParams, order: usize) -> Result<SeriesQ> {
    if k < -1 {
        return arg("F_k is used for k >= -1");
    }
    let top = order + 1;
    let al = alpha_seq(hp, top);
    let be = beta_seq(q, hp, top);
    let coeffs = (0..=order as i64)
        .map(|n| {
            let j = n - k;
            if j < 0 {
                return Rational::zero();
            }
            let j = j as u64;
            let den = arith::pow(hp.h, j) * arith::factorial(j);
            Rational::new(BigInt::from(&al[n as usize] * &be[j as usize]), BigInt::from(den))
        })
        .collect();
    Ok(SeriesQ::from_coeffs(coeffs, order))
}

/// Right-hand side of the reduction of F_k to F_0, F_1 and their derivatives.
pub fn f_reduction(k: usize, q: u64, hp: HParams, order: usize) -> Result<SeriesQ> {
    let tab = CoeffTable::new(hp, k.max(2));
    let f0 = f_series(0, q, hp, order)?;
    let f1 = f_series(1, q, hp, order)?;
    let mut acc = SeriesQ::zero(order + k);
    let h = rat(hp.h as i64);
    let mut d0 = f0.clone();
    for mu in 0..=k / 2 {
        if mu > 0 {
            d0 = d0.derivative();
        }
        let coef = Rational::from_integer(tab.c(k, mu).unwrap().clone()) * num_traits::pow(h.clone(), mu);
        acc = &acc + &d0.scale(&coef).shift(k + mu);
    }
    if k >= 1 {
        let mut d1 = f1.clone();
        for nu in 0..=(k - 1) / 2 {
            if nu > 0 {
                d1 = d1.derivative();
            }
            let coef = Rational::from_integer(tab.d(k, nu).unwrap().clone()) * num_traits::pow(h.clone(), nu);
            acc = &acc + &d1.scale(&coef).shift(k + nu - 1);
        }
    }
    Ok(acc)
}

/// 𝓢(z) = Σ_{n ≥ 0} s^H(n+1) z^n.
pub fn s_series(q: u64, hp: HParams, order: usize) -> Result<SeriesQ> {
    let s = s_general_seq(q, hp, order + 1)?;
    Ok(SeriesQ::from_coeffs(s[1..].iter().map(rat_nat).collect(), order))
}

/// Exponent of z in 𝓢 carrying the count at index n.
pub fn exponent_of_index(n: u64) -> u64 {
    assert!(n >= 1);
    n - 1
}

pub fn index_of_exponent(e: u64) -> u64 {
    e + 1
}

/// h^ν f^(ν) / f.
pub fn logderiv(f: &SeriesQ, nu: usize, h: u64) -> Result<SeriesQ> {
    if f.coeff(0).is_zero() {
        return arg("logarithmic derivative needs a non-zero constant term");
    }
    if nu == 0 {
        return Ok(SeriesQ::one(f.order()));
    }
    if nu > f.order() {
        return arg("derivative order exceeds the known terms");
    }
    let mut d = f.clone();
    for _ in 0..nu {
        d = d.derivative();
    }
    let inv = f.inverse()?;
    let hn = num_traits::pow(rat(h as i64), nu);
    Ok((&d * &inv).scale(&hn))
}

/// Multiplicity vectors π (π_j = number of parts equal to j) of the
/// partitions of ν.
pub fn partitions(nu: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=max.min(rest)).rev() {
            cur[part] += 1;
            rec(rest - part, part, cur, out);
            cur[part] -= 1;
        }
    }
    let mut out = Vec::new();
    rec(nu, nu, &mut vec![0; nu + 1], &mut out);
    out
}

/// Σ_π h^(ν−|π|) ν!/Π((j!)^π_j π_j!) Π (𝓢^(j−1))^π_j, which equals
/// h^ν 𝓗^(ν)/𝓗 when h𝓗'/𝓗 = 𝓢.
pub fn faa_di_bruno(s: &SeriesQ, nu: usize, h: u64) -> SeriesQ {
    if nu == 0 {
        return SeriesQ::one(s.order());
    }
    let mut derivs = vec![s.clone()];
    for _ in 1..nu {
        let next = derivs.last().unwrap().derivative();
        derivs.push(next);
    }
    let order = s.order() + 1 - nu;
    let mut acc = SeriesQ::zero(order);
    for pi in partitions(nu) {
        let parts: usize = pi.iter().sum();
        let mut den = Nat::one();
        for (j, &m) in pi.iter().enumerate().skip(1) {
            den *= num_traits::pow(arith::factorial(j as u64), m) * arith::factorial(m as u64);
        }
        let coef = Rational::new(
            BigInt::from(arith::factorial(nu as u64) * arith::pow(h, (nu - parts) as u64)),
            BigInt::from(den),
        );
        let mut term = SeriesQ::one(order).scale(&coef);
        for (j, &m) in pi.iter().enumerate().skip(1) {
            for _ in 0..m {
                term = &term * &derivs[j - 1];
            }
        }
        acc = &acc + &term;
    }
    acc.truncate(order)
}

/// Parity of the coefficient of z^(n−1) in the explicit mod-2 solution for
/// 𝓢 at even |H|: the Fuss–Catalan number C((q−1)η+1, η)/((q−1)η+1) when
/// n = 2 + 4(q−1)η, and 0 otherwise.
pub fn shat_mod2_coeff(q: u64, n: u64) -> Parity {
    let step = 4 * (q - 1);
    if n < 2 || (n - 2) % step != 0 {
        return Parity::Even;
    }
    let eta = (n - 2) / step;
    // (q−1)η + 1 is odd, so dividing by it does not change the parity
    arith::binom_mod2((q - 1) * eta + 1, eta).unwrap()
}

/// Coefficients of a series known to be integral.
pub fn integral_coeffs(s: &SeriesQ) -> Result<Vec<Int>> {
    s.to_ints()
        .ok_or_else(|| Error::Consistency("series has a fractional coefficient".into()))
}

/// True when every coefficient is a non-negative integer.
pub fn is_natural(s: &SeriesQ) -> bool {
    s.coeffs().iter().all(|c| c.is_integer() && !c.is_negative())
}
