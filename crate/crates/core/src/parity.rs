//! Parity predicates for subgroup counts of C2 * Cq and of its lifts
//! Γ_m = C2 * Cq * C_m, all decided by binary digit sums.

use crate::arith::{self, Parity};
use crate::census::Census;
use crate::error::{arg, Error, Result};
use crate::exec::Exec;

/// s2((q−1)η + 1) = s2(η) + s2((q−2)η + 1), i.e. C((q−1)η+1, η) is odd.
pub fn cond_eta(q: u64, eta: u64) -> bool {
    arith::s2((q - 1) * eta + 1) == arith::s2(eta) + arith::s2((q - 2) * eta + 1)
}

/// The two index shapes that can carry an odd count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Form {
    /// n = 1 + 2(q−1)η
    Odd,
    /// n = 2 + 4(q−1)η
    Even,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Witness {
    pub form: Form,
    pub eta: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Verdict {
    pub parity: Parity,
    pub witness: Option<Witness>,
}

impl Verdict {
    fn even() -> Verdict {
        Verdict { parity: Parity::Even, witness: None }
    }

    fn odd(form: Form, eta: u64) -> Verdict {
        Verdict { parity: Parity::Odd, witness: Some(Witness { form, eta }) }
    }
}

/// η with n = 1 + 2(q−1)η.
pub fn odd_form_eta(q: u64, n: u64) -> Option<u64> {
    let step = 2 * (q - 1);
    (n % 2 == 1 && (n - 1) % step == 0).then(|| (n - 1) / step)
}

/// η with n = 2 + 4(q−1)η.
pub fn even_form_eta(q: u64, n: u64) -> Option<u64> {
    let step = 4 * (q - 1);
    (n >= 2 && (n - 2) % step == 0).then(|| (n - 2) / step)
}

fn check_args(q: u64, n: u64) -> Result<()> {
    arith::check_odd_prime(q)?;
    if n == 0 {
        return arg("index n must be positive");
    }
    Ok(())
}

/// Parity of s_q(n), the number of index-n subgroups.
pub fn sq_parity(q: u64, n: u64) -> Result<Verdict> {
    check_args(q, n)?;
    if let Some(eta) = odd_form_eta(q, n).filter(|&e| cond_eta(q, e)) {
        return Ok(Verdict::odd(Form::Odd, eta));
    }
    if let Some(eta) = even_form_eta(q, n).filter(|&e| cond_eta(q, e)) {
        return Ok(Verdict::odd(Form::Even, eta));
    }
    Ok(Verdict::even())
}

/// Parity of N_q(n), the subgroups with λ = ν = 0.
pub fn nq_parity(q: u64, n: u64) -> Result<Verdict> {
    check_args(q, n)?;
    match even_form_eta(q, n).filter(|&e| cond_eta(q, e)) {
        Some(eta) => Ok(Verdict::odd(Form::Even, eta)),
        None => Ok(Verdict::even()),
    }
}

/// M_q(n), the subgroups with μ = 0, is always even.
pub fn mq_parity(q: u64, n: u64) -> Result<Parity> {
    check_args(q, n)?;
    Ok(Parity::Even)
}

fn check_fermat(q: u64) -> Result<()> {
    if !arith::is_fermat_prime(q) {
        return Err(Error::Precondition(format!("q = {q} is not a Fermat prime")));
    }
    Ok(())
}

/// u_σ = (2(q−1)^σ − q)/(q−2) for σ = 1, 2, ... while u_σ ≤ limit.
pub fn fermat_units(q: u64, limit: u64) -> Vec<(u32, u64)> {
    let mut out = Vec::new();
    let mut p: u128 = q as u128 - 1;
    let mut sigma = 1;
    loop {
        let u = (2 * p - q as u128) / (q as u128 - 2);
        if u > limit as u128 {
            return out;
        }
        out.push((sigma, u as u64));
        p *= q as u128 - 1;
        sigma += 1;
    }
}

/// s_q(n) odd iff n = u_σ or n = 2u_σ, for Fermat q.
pub fn sq_parity_fermat(q: u64, n: u64) -> Result<Parity> {
    check_args(q, n)?;
    check_fermat(q)?;
    Ok(Parity::from_odd(fermat_units(q, n).iter().any(|&(_, u)| u == n || 2 * u == n)))
}

/// N_q(n) odd iff n = 2u_σ with σ ≥ 1, for Fermat q.
pub fn nq_parity_fermat(q: u64, n: u64) -> Result<Parity> {
    check_args(q, n)?;
    check_fermat(q)?;
    Ok(Parity::from_odd(fermat_units(q, n).iter().any(|&(_, u)| 2 * u == n)))
}

/// C(2^λ k + 1, k − 1) is odd iff k = (2^(λσ) − 1)/(2^λ − 1) or twice that.
pub fn binom_shift_parity(lambda: u32, k: u64) -> Result<bool> {
    if lambda == 0 || k == 0 {
        return arg("binom_shift_parity needs lambda >= 1 and k >= 1");
    }
    let base: u128 = 1 << lambda;
    let mut term: u128 = 1;
    let mut sum: u128 = 1;
    while sum <= k as u128 {
        if sum == k as u128 || 2 * sum == k as u128 {
            return Ok(true);
        }
        term *= base;
        sum += term;
    }
    Ok(false)
}

/// Parity of M_q(qk; k−1, k)/(k−1)! for Fermat q: odd iff
/// k = ((q−1)^σ − 1)/(q − 2) or twice that.
pub fn tree_case_parity(q: u64, k: u64) -> Result<bool> {
    check_fermat(q)?;
    binom_shift_parity((q - 1).trailing_zeros(), k)
}

/// Which clause of the lifted parity law a contribution comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Clause {
    /// n = 2d(1 + 2(q−1)η), q ∤ d
    Doubled,
    /// n = d(1 + 2(q−1)η), d odd, q ∤ d, |H| odd
    Plain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Contribution {
    pub d: u64,
    pub eta: u64,
    pub clause: Clause,
}

/// The divisor-d summand of the lifted count, when it is odd.
pub fn lift_component(q: u64, d: u64, n: u64, h_even: bool) -> Option<Contribution> {
    if n % d != 0 || d % q == 0 {
        return None;
    }
    let r = n / d;
    let doubled = (r % 2 == 0)
        .then(|| odd_form_eta(q, r / 2))
        .flatten()
        .filter(|&e| cond_eta(q, e));
    let plain = (d % 2 == 1 && !h_even)
        .then(|| odd_form_eta(q, r))
        .flatten()
        .filter(|&e| cond_eta(q, e));
    assert!(
        doubled.is_none() || plain.is_none(),
        "both clauses hold at q={q} d={d} n={n}"
    );
    doubled
        .map(|eta| Contribution { d, eta, clause: Clause::Doubled })
        .or(plain.map(|eta| Contribution { d, eta, clause: Clause::Plain }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftVerdict {
    pub parity: Parity,
    /// Divisors whose summand is odd; the parity is their count mod 2.
    pub contributions: Vec<Contribution>,
}

fn check_lift(q: u64, m: u64, n: u64, h_even: bool) -> Result<()> {
    check_args(q, n)?;
    if m == 0 {
        return arg("m must be positive");
    }
    if h_even && m % 2 == 0 {
        return Err(Error::Precondition(format!(
            "m = {m} and |H| both even contradicts gcd(m, |H|) = 1"
        )));
    }
    Ok(())
}

/// Parity of s^H_{Γ_m}(1, n): the XOR over d | m of the divisor summands.
pub fn lift_parity(q: u64, m: u64, n: u64, h_even: bool) -> Result<LiftVerdict> {
    check_lift(q, m, n, h_even)?;
    let contributions: Vec<Contribution> = arith::divisors(m)
        .into_iter()
        .filter_map(|d| lift_component(q, d, n, h_even))
        .collect();
    Ok(LiftVerdict { parity: Parity::from_odd(contributions.len() % 2 == 1), contributions })
}

/// lift_parity for n = 1 ..= n_max.
pub fn lift_parity_range(q: u64, m: u64, n_max: u64, h_even: bool, exec: Exec) -> Result<Vec<LiftVerdict>> {
    check_lift(q, m, 1, h_even)?;
    let divs = arith::divisors(m);
    Ok(exec.map_range(1, n_max + 1, |n| {
        let contributions: Vec<Contribution> =
            divs.iter().filter_map(|&d| lift_component(q, d, n, h_even)).collect();
        LiftVerdict { parity: Parity::from_odd(contributions.len() % 2 == 1), contributions }
    }))
}

/// The count the divisor-d summand reduces to, mod 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionCase {
    Nq(u64),
    Sq(u64),
    Mq(u64),
    Zero,
}

pub fn reduction_case(q: u64, d: u64, n: u64, h_even: bool) -> ReductionCase {
    if n % d != 0 {
        return ReductionCase::Zero;
    }
    let r = n / d;
    let q_free = d % q != 0;
    match (d % 2 == 0, q_free, h_even) {
        (true, true, _) => ReductionCase::Nq(r),
        (false, true, false) => ReductionCase::Sq(r),
        (false, true, true) => ReductionCase::Nq(r),
        (false, false, false) => ReductionCase::Mq(r),
        _ => ReductionCase::Zero,
    }
}

/// Parity of a divisor summand from the census counts themselves.
pub fn reduction_parity(census: &mut Census, q: u64, d: u64, n: u64, h_even: bool) -> Result<Parity> {
    Ok(match reduction_case(q, d, n, h_even) {
        ReductionCase::Nq(r) => Parity::of(&census.n_count(q, r)),
        ReductionCase::Sq(r) => Parity::of(&census.s_total(q, r)?),
        ReductionCase::Mq(r) => Parity::of(&census.mq_count(q, r)),
        ReductionCase::Zero => Parity::Even,
    })
}

/// 2^(−1) q mod p is outside the subgroup generated by q − 1 mod p.
pub fn cond_cq(q: u64, p: u64) -> Result<bool> {
    arith::check_odd_prime(q)?;
    if !arith::is_odd_prime(p) {
        return arg(format!("p = {p} must be an odd prime"));
    }
    if (2 * q * (q - 1)) % p == 0 {
        return arg(format!("p = {p} divides 2q(q-1)"));
    }
    let target = (q % p) * ((p + 1) / 2) % p;
    let g = (q - 1) % p;
    let mut x = 1u64;
    loop {
        if x == target {
            return Ok(false);
        }
        x = x * g % p;
        if x == 1 {
            return Ok(true);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FermatVerdict {
    pub parity: Parity,
    /// (t, σ) with n = t·u_σ, when odd.
    pub witness: Option<(u64, u32)>,
}

/// For Fermat q: odd iff n = t·u_σ with σ ≥ 1, t | 2m, q ∤ t, and t even
/// when |H| is even. Agrees with `lift_parity` from `fermat_threshold` on.
pub fn fermat_bed(q: u64, m: u64, n: u64, h_even: bool) -> Result<FermatVerdict> {
    check_lift(q, m, n, h_even)?;
    check_fermat(q)?;
    for (sigma, u) in fermat_units(q, n) {
        if n % u != 0 {
            continue;
        }
        let t = n / u;
        if (2 * m) % t == 0 && t % q != 0 && (!h_even || t % 2 == 0) {
            return Ok(FermatVerdict { parity: Parity::Odd, witness: Some((t, sigma)) });
        }
    }
    Ok(FermatVerdict { parity: Parity::Even, witness: None })
}

/// ⌈4m²/(q−2)⌉.
pub fn fermat_threshold(q: u64, m: u64) -> u64 {
    (4 * m * m).div_ceil(q - 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn eta_condition() {
        assert!(cond_eta(3, 0));
        assert!(cond_eta(3, 3));
        assert!(!cond_eta(3, 2));
    }

    #[test]
    fn base_parities() {
        assert!(sq_parity(3, 5).unwrap().parity.is_odd());
        assert!(sq_parity(3, 2).unwrap().parity.is_odd());
        assert!(!sq_parity(3, 6).unwrap().parity.is_odd());
        assert!(nq_parity(3, 2).unwrap().parity.is_odd());
        assert!(nq_parity(3, 10).unwrap().parity.is_odd());
        assert!(!nq_parity(3, 4).unwrap().parity.is_odd());
        assert_eq!(mq_parity(3, 3).unwrap(), Parity::Even);
        assert_eq!(mq_parity(5, 5).unwrap(), Parity::Even);
        assert_eq!(mq_parity(3, 4).unwrap(), Parity::Even);
        assert!(sq_parity(4, 5).is_err());
    }

    #[test]
    fn shifted_binomials() {
        assert!(binom_shift_parity(1, 3).unwrap());
        assert!(!binom_shift_parity(1, 4).unwrap());
        assert!(binom_shift_parity(2, 5).unwrap());
        for lambda in 1..=4u32 {
            for k in 1..=300u64 {
                let direct = arith::binom_mod2((1 << lambda) * k + 1, k - 1).unwrap().is_odd();
                assert_eq!(binom_shift_parity(lambda, k).unwrap(), direct, "lambda={lambda} k={k}");
            }
        }
    }

    #[test]
    fn tree_case() {
        assert!(tree_case_parity(3, 1).unwrap());
        assert!(tree_case_parity(3, 3).unwrap());
        assert!(!tree_case_parity(3, 4).unwrap());
        assert!(tree_case_parity(7, 3).is_err());
    }

    #[test]
    fn lifted_examples() {
        assert!(lift_component(3, 1, 2, true).is_some());
        assert!(lift_component(3, 5, 10, true).is_some());
        assert!(lift_component(3, 1, 13, false).is_some());
        assert!(lift_parity(3, 625, 29, false).unwrap().parity.is_odd());
        assert!(!lift_parity(3, 625, 10, true).unwrap().parity.is_odd());
        assert!(lift_parity(3, 625, 2, true).unwrap().parity.is_odd());
        assert!(matches!(lift_parity(3, 4, 2, true), Err(Error::Precondition(_))));
    }

    #[test]
    fn residue_condition() {
        assert!(cond_cq(3, 7).unwrap());
        assert!(cond_cq(3, 17).unwrap());
        assert!(!cond_cq(3, 5).unwrap());
        assert!(cond_cq(3, 3).is_err());
        assert!(cond_cq(5, 2).is_err());
    }

    #[test]
    fn class_125_mod_136_is_not_uniform_for_q17() {
        // 16^453 ≡ 17/2 (mod 3253) although 3253 ≡ 125 (mod 136)
        assert_eq!(3253 % 136, 125);
        assert!(!cond_cq(17, 3253).unwrap());
        assert!(!cond_cq(17, 3797).unwrap());
        // class 101 holds throughout the tested range instead
        for p in (101..20_000).step_by(136).filter(|&p| arith::is_prime(p)) {
            assert!(cond_cq(17, p).unwrap(), "p = {p}");
        }
    }

    #[test]
    fn fermat_examples() {
        assert!(fermat_bed(3, 1, 5, false).unwrap().parity.is_odd());
        assert!(!fermat_bed(3, 1, 4, false).unwrap().parity.is_odd());
        assert_eq!(
            fermat_bed(3, 625, 12250, true).unwrap().parity,
            lift_parity(3, 625, 12250, true).unwrap().parity
        );
        assert_eq!(fermat_threshold(3, 625), 1_562_500);
    }

    proptest! {
        #[test]
        fn fermat_forms_agree_with_eta_forms(qi in 0usize..3, n in 1u64..20_000) {
            let q = [3u64, 5, 17][qi];
            prop_assert_eq!(sq_parity(q, n).unwrap().parity, sq_parity_fermat(q, n).unwrap());
            prop_assert_eq!(nq_parity(q, n).unwrap().parity, nq_parity_fermat(q, n).unwrap());
        }

        #[test]
        fn odd_lifted_counts_have_witnesses(m in 1u64..200, n in 1u64..5000, h_even in any::<bool>()) {
            prop_assume!(!(h_even && m % 2 == 0));
            let v = lift_parity(3, m, n, h_even).unwrap();
            for c in &v.contributions {
                prop_assert_eq!(m % c.d, 0);
                prop_assert_eq!(n % c.d, 0);
                prop_assert!(cond_eta(3, c.eta));
            }
        }
    }
}
