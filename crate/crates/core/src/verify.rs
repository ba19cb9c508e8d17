//! Cross-check suite run by `hecke verify`.
//!
//! Every check compares two independent evaluations, or an evaluation
//! against a stated closed form, over a range fixed by the level.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::arith::{self, Nat, Parity, Rational};
use crate::census::{self, Census};
use crate::exec::Exec;
use crate::gf2::{self, OmegaCase, PolyBit};
use crate::oracle;
use crate::parity;
use crate::series::{rat, SeriesQ};
use crate::types::RepType;
use crate::wreath::{self, CoeffTable, HParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Quick,
    Full,
}

impl Level {
    fn pick<T>(self, quick: T, full: T) -> T {
        match self {
            Level::Quick => quick,
            Level::Full => full,
        }
    }
}

pub type CheckResult = std::result::Result<(), String>;

pub struct Check {
    pub module: &'static str,
    pub name: &'static str,
    pub run: fn(Level) -> CheckResult,
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub module: &'static str,
    pub name: &'static str,
    pub result: CheckResult,
}

pub const MODULES: [&str; 6] = ["arith", "oracle", "census", "wreath", "gf2", "parity"];

pub fn sample_hparams() -> [HParams; 3] {
    [
        HParams::trivial(),
        HParams::new(2, 2, 1).unwrap(),
        HParams::new(6, 4, 3).unwrap(),
    ]
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> CheckResult {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lift<T, E: std::fmt::Display>(r: std::result::Result<T, E>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

pub fn checks() -> Vec<Check> {
    vec![
        Check { module: "arith", name: "involution valuations", run: involution_valuations },
        Check { module: "arith", name: "kummer and lucas", run: kummer_lucas },
        Check { module: "arith", name: "multinomial valuation bounds", run: multinomial_bounds },
        Check { module: "oracle", name: "free action divides pair counts", run: free_action },
        Check { module: "oracle", name: "sequential and parallel search agree", run: oracle_policies },
        Check { module: "census", name: "type counts match oracle", run: census_vs_oracle },
        Check { module: "census", name: "graph counts match oracle", run: graphs_vs_oracle },
        Check { module: "census", name: "tree formula", run: tree_formula },
        Check { module: "census", name: "q=3 closed forms", run: q3_forms },
        Check { module: "census", name: "free subgroup identity", run: free_identity },
        Check { module: "census", name: "mu=0 totals via involutions", run: mu_zero_totals },
        Check { module: "census", name: "mu=0 totals even with 2-adic bound", run: mu_zero_valuation },
        Check { module: "wreath", name: "twisted counts match oracle", run: twisted_vs_oracle },
        Check { module: "wreath", name: "trivial H gives plain counts", run: trivial_twist },
        Check { module: "wreath", name: "q=3 recurrence", run: q3_recurrence },
        Check { module: "wreath", name: "F-series relations and reduction", run: f_relations },
        Check { module: "wreath", name: "exponential generating identity", run: exponential_identity },
        Check { module: "wreath", name: "coefficients mod 2", run: coefficients_mod2 },
        Check { module: "wreath", name: "log-derivative expansions", run: log_derivatives },
        Check { module: "wreath", name: "mod 2 functional equation", run: functional_equation_mod2 },
        Check { module: "gf2", name: "displayed matrices", run: displayed_matrices },
        Check { module: "gf2", name: "even h determinant and minors", run: det_even },
        Check { module: "gf2", name: "odd h determinant", run: det_odd },
        Check { module: "gf2", name: "odd h minors", run: minors_odd },
        Check { module: "parity", name: "index parity vs census", run: index_parity },
        Check { module: "parity", name: "fermat forms", run: fermat_forms },
        Check { module: "parity", name: "tree case parity", run: tree_parity },
        Check { module: "parity", name: "shifted binomial parity", run: shifted_binomials },
        Check { module: "parity", name: "lifted parity vs reduction table", run: lifted_vs_reduction },
        Check { module: "parity", name: "m=625 lists", run: lists_625 },
        Check { module: "parity", name: "fermat bed agreement", run: fermat_agreement },
        Check { module: "parity", name: "residue classes", run: residue_classes },
    ]
}

/// Runs the checks of one module, or all of them. Checks run in list order;
/// heavy ones use the parallel policy internally.
pub fn run(module: Option<&str>, level: Level) -> Vec<Outcome> {
    checks()
        .into_iter()
        .filter(|c| module.is_none_or(|m| m == c.module))
        .map(|c| {
            let result = std::panic::catch_unwind(|| (c.run)(level))
                .unwrap_or_else(|_| Err("panicked".to_string()));
            Outcome { module: c.module, name: c.name, result }
        })
        .collect()
}

fn involution_valuations(level: Level) -> CheckResult {
    for n in 1..=level.pick(100, 200) {
        let direct = arith::v2(&arith::involutions(n as i64)).finite();
        ensure(direct == Some(arith::v2_involutions(n).unwrap()), || format!("n = {n}"))?;
    }
    Ok(())
}

fn kummer_lucas(level: Level) -> CheckResult {
    let top = level.pick(128, 512);
    for a in 0..=top {
        let mut row = Nat::from(1u8);
        for b in 0..=a {
            if b > 0 {
                row = row * (a - b + 1) / b;
            }
            let v = arith::v2(&row).finite().unwrap();
            ensure(v == arith::v2_binomial(a, b).unwrap(), || format!("v2 C({a},{b})"))?;
            ensure(
                Parity::of(&row) == arith::binom_mod2(a, b).unwrap(),
                || format!("parity C({a},{b})"),
            )?;
        }
    }
    Ok(())
}

/// Multiset sums of parts ≡ r (mod 4) with up to `max_parts` parts below `bound`.
fn part_lists(r: u64, bound: u64, max_parts: usize) -> Vec<Vec<u64>> {
    fn rec(vals: &[u64], start: usize, left: usize, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if left == 0 {
            return;
        }
        for i in start..vals.len() {
            cur.push(vals[i]);
            rec(vals, i, left - 1, cur, out);
            cur.pop();
        }
    }
    let vals: Vec<u64> = (r..bound).step_by(4).collect();
    let mut out = Vec::new();
    rec(&vals, 0, max_parts, &mut vec![], &mut out);
    out
}

fn multinomial_bounds(level: Level) -> CheckResult {
    let (bound, parts) = level.pick((14, 4), (24, 5));
    for rho in part_lists(1, bound, parts) {
        let v = arith::v2(&arith::multinomial(rho.iter().sum(), &rho).unwrap()).finite().unwrap();
        let alpha = rho.len() as u64;
        ensure(v >= arith::v2_factorial(alpha), || format!("parts {rho:?}"))?;
    }
    for rho in part_lists(3, bound, parts) {
        let v = arith::v2(&arith::multinomial(rho.iter().sum(), &rho).unwrap()).finite().unwrap();
        let alpha = rho.len() as u64;
        ensure(v + alpha >= arith::v2_factorial(3 * alpha), || format!("parts {rho:?}"))?;
    }
    Ok(())
}

fn free_action(level: Level) -> CheckResult {
    for q in [3u64, 5, 7] {
        for n in 1..=level.pick(7, 8) {
            let fact = arith::factorial(n - 1);
            for t in lift(oracle::tally(q, n, oracle::budget_from_env(), Exec::default()))? {
                ensure((&t.pairs % &fact).is_zero(), || format!("q={q} n={n} {:?}", t.rep))?;
            }
        }
    }
    Ok(())
}

fn oracle_policies(level: Level) -> CheckResult {
    for n in 1..=level.pick(8, 10) {
        let a = lift(oracle::enumerate_types_with(3, n, oracle::budget_from_env(), Exec::Sequential))?;
        let b = lift(oracle::enumerate_types_with(3, n, oracle::budget_from_env(), Exec::Parallel))?;
        ensure(a == b, || format!("n = {n}"))?;
    }
    Ok(())
}

fn census_vs_oracle(level: Level) -> CheckResult {
    let nmax = level.pick(8, 10);
    let mut c = Census::new();
    for q in [3u64, 5, 7] {
        for n in 1..=nmax {
            let o = lift(oracle::enumerate_types(q, n, oracle::budget_from_env()))?;
            ensure(lift(c.types(q, n))? == o, || format!("types q={q} n={n}"))?;
            ensure(lift(c.s_total(q, n))? == o.total(), || format!("total q={q} n={n}"))?;
            ensure(c.mq_count(q, n) == o.total_where(|t| t.mu == 0), || format!("M q={q} n={n}"))?;
            ensure(
                c.n_count(q, n) == o.total_where(|t| t.lambda == 0 && t.nu == 0),
                || format!("N q={q} n={n}"),
            )?;
            ensure(
                c.f_count(q, n) == o.total_where(|t| t.lambda == 0 && t.mu == 0),
                || format!("f q={q} n={n}"),
            )?;
        }
    }
    Ok(())
}

fn graphs_vs_oracle(level: Level) -> CheckResult {
    let mut c = Census::new();
    let nmax = level.pick(8, 10);
    for q in [3u64, 5, 7] {
        for n in 1..=nmax {
            let tallies = lift(oracle::tally(q, n, oracle::budget_from_env(), Exec::default()))?;
            for m2 in 0..=n / q {
                for m1 in 0..=n / 2 {
                    let g = tallies
                        .iter()
                        .find(|t| t.rep == RepType { m1, m2 })
                        .map(|t| t.graphs.clone())
                        .unwrap_or_default();
                    ensure(c.m_general(q, n, m1, m2) == g, || format!("q={q} n={n} m1={m1} m2={m2}"))?;
                }
            }
        }
    }
    Ok(())
}

fn tree_formula(level: Level) -> CheckResult {
    let mut c = Census::new();
    for q in [3u64, 5, 7] {
        for k in 1..=level.pick(5, 6) {
            ensure(
                lift(c.m_core(q, k, k - 1))? == lift(census::m_tree(q, k))?,
                || format!("q={q} k={k}"),
            )?;
        }
    }
    Ok(())
}

fn q3_forms(level: Level) -> CheckResult {
    let mut c = Census::new();
    let kmax = level.pick(5, 6);
    for k in 1..=kmax {
        let kf = arith::factorial(k - 1);
        ensure(lift(c.m_core(3, k, k - 1))? / &kf == census::q3_tree(k), || format!("tree k={k}"))?;
        ensure(lift(c.m_core(3, k, k))? / &kf == census::q3_one_cycle(k), || format!("cycle k={k}"))?;
        for e in k + 1.. {
            if 2 * e >= 3 * k {
                break;
            }
            let f = c.f_count(3, 6 * (e - k));
            let lhs = Rational::new(BigInt::from(lift(c.m_core(3, k, e))?), BigInt::from(kf.clone()));
            ensure(lhs == census::q3_general(k, e, &f), || format!("general k={k} e={e}"))?;
        }
    }
    for l in 1..=kmax / 2 {
        let lhs = lift(c.m_core(3, 2 * l, 3 * l))? / arith::factorial(2 * l - 1);
        ensure(lhs == arith::pow(3, 2 * l - 1) * c.f_count(3, 6 * l), || format!("free l={l}"))?;
    }
    Ok(())
}

fn free_identity(level: Level) -> CheckResult {
    let mut c = Census::new();
    for q in [3u64, 5, 7] {
        // free subgroups live at index q·m2 with m2 even
        for m2 in (2..).step_by(2).take_while(|m2| q * m2 <= level.pick(12, 18)) {
            let n = q * m2;
            let lhs = c.m_general(q, n, n / 2, m2);
            let rhs = arith::pow(q, m2 - 1) * arith::factorial(m2 - 1) * c.f_count(q, n);
            ensure(lhs == rhs, || format!("q={q} n={n}"))?;
        }
    }
    Ok(())
}

/// M_q(qk) = Σ_γ Σ_ρ (−1)^(γ−1)/γ · multinomial(k; ρ) Π I_{qρ_i} / (q^(k−1)(k−1)!).
pub fn m_total_via_involutions(q: u64, k: u64) -> Nat {
    fn rec(q: u64, left: u64, parts: &mut Vec<u64>, k: u64, acc: &mut Rational) {
        if left == 0 {
            let g = parts.len() as i64;
            let mut term = arith::multinomial(k, parts).unwrap();
            for &r in parts.iter() {
                term *= arith::involutions((q * r) as i64);
            }
            let sign = if g % 2 == 1 { 1 } else { -1 };
            *acc += Rational::new(BigInt::from(term) * sign, BigInt::from(g));
            return;
        }
        for r in 1..=left {
            parts.push(r);
            rec(q, left - r, parts, k, acc);
            parts.pop();
        }
    }
    let mut acc = Rational::zero();
    rec(q, k, &mut vec![], k, &mut acc);
    let den = BigInt::from(arith::pow(q, k - 1) * arith::factorial(k - 1));
    let v = acc / den;
    assert!(v.is_integer());
    v.to_integer().to_biguint().unwrap()
}

fn mu_zero_totals(level: Level) -> CheckResult {
    let mut c = Census::new();
    for q in [3u64, 5, 7] {
        for k in 1..=level.pick(5, 7) {
            let t = lift(c.m_total(q, k))?;
            ensure(t == m_total_via_involutions(q, k), || format!("q={q} k={k}"))?;
            ensure(t == c.mq_count(q, q * k), || format!("typewise q={q} k={k}"))?;
        }
        for n in 1..=level.pick(20, 40) {
            if n % q != 0 {
                ensure(c.mq_count(q, n).is_zero(), || format!("q={q} n={n}"))?;
            }
        }
    }
    Ok(())
}

/// 4·v2(M) ≥ (qk − 1) − 4·v2((k−1)!) − 4⌊log2 k⌋.
pub fn meets_two_adic_bound(q: u64, k: u64, m_total: &Nat) -> bool {
    let Some(v) = arith::v2(m_total).finite() else {
        return true;
    };
    let log = 63 - k.leading_zeros() as i64;
    4 * v as i64 >= (q * k) as i64 - 1 - 4 * arith::v2_factorial(k - 1) as i64 - 4 * log
}

fn mu_zero_valuation(level: Level) -> CheckResult {
    let mut c = Census::new();
    for q in [3u64, 5, 7] {
        for k in 1..=level.pick(6, 8) {
            let t = lift(c.m_total(q, k))?;
            ensure(t.is_even(), || format!("odd at q={q} k={k}"))?;
            if q >= 5 && k <= 5 {
                ensure(meets_two_adic_bound(q, k, &t), || format!("bound at q={q} k={k}"))?;
            }
        }
    }
    Ok(())
}

fn twisted_vs_oracle(level: Level) -> CheckResult {
    let nmax = level.pick(7, 9);
    for q in [3u64, 5] {
        for hp in sample_hparams() {
            let seq = lift(wreath::s_general_seq(q, hp, nmax as usize))?;
            for n in 1..=nmax {
                let o = lift(oracle::oracle_sh(q, n, hp, oracle::budget_from_env()))?;
                ensure(seq[n as usize] == o, || format!("q={q} H={hp:?} n={n}"))?;
            }
        }
    }
    Ok(())
}

fn trivial_twist(level: Level) -> CheckResult {
    let mut c = Census::new();
    let nmax = level.pick(12, 20);
    for q in [3u64, 5] {
        let seq = lift(wreath::s_general_seq(q, HParams::trivial(), nmax))?;
        for n in 1..=nmax {
            ensure(seq[n] == lift(c.s_total(q, n as u64))?, || format!("q={q} n={n}"))?;
        }
    }
    Ok(())
}

fn q3_recurrence(level: Level) -> CheckResult {
    let nmax = level.pick(12, 30);
    for hp in sample_hparams() {
        let rec = wreath::s3h_rec_seq(hp, nmax);
        let direct = lift(wreath::s_general_seq(3, hp, nmax))?;
        for n in 1..=nmax {
            ensure(rec[n] == BigInt::from(direct[n].clone()), || format!("H={hp:?} n={n}"))?;
        }
    }
    Ok(())
}

fn f_relations(level: Level) -> CheckResult {
    let order = level.pick(12, 20);
    for q in [3u64, 5] {
        for hp in sample_hparams() {
            let big = order + 2 * q as usize + 4;
            let f: Vec<SeriesQ> = lift((-1..=q as i64 + 4).map(|k| wreath::f_series(k, q, hp, big)).collect())?;
            let fk = |k: i64| &f[(k + 1) as usize];
            let (ra, rb, rh) = (rat(hp.a() as i64), rat(hp.b() as i64), rat(hp.h() as i64));
            for k in 0..=3i64 {
                let rhs = &(&fk(k).scale(&ra).shift(1) + &fk(k - 1).scale(&rh).shift(2))
                    + &fk(k - 1).derivative().scale(&rh).shift(3);
                ensure(fk(k + 1).agrees_to(&rhs, order), || format!("first q={q} H={hp:?} k={k}"))?;
                let lhs = fk(k - 1).derivative().scale(&rh).shift(1);
                let rhs = &(&fk(k - 1).scale(&(&rh * rat(k - 1))) + &fk(k).scale(&rb)) + fk(k + q as i64 - 1);
                ensure(lhs.agrees_to(&rhs, order), || format!("second q={q} H={hp:?} k={k}"))?;
            }
            for k in 0..=2 * q as usize {
                let lhs = lift(wreath::f_series(k as i64, q, hp, order))?;
                let rhs = lift(wreath::f_reduction(k, q, hp, order))?;
                ensure(lhs.agrees_to(&rhs, order), || format!("reduction q={q} H={hp:?} k={k}"))?;
            }
        }
    }
    Ok(())
}

fn exponential_identity(level: Level) -> CheckResult {
    let order = level.pick(12, 20);
    for q in [3u64, 5] {
        for hp in sample_hparams() {
            let s = lift(wreath::s_series(q, hp, order))?;
            let g = s.integral().scale(&Rational::new(1.into(), BigInt::from(hp.h())));
            let h = lift(g.exp())?;
            let f0 = lift(wreath::f_series(0, q, hp, order + 1))?;
            ensure(h.agrees_to(&f0, order + 1), || format!("q={q} H={hp:?}"))?;
        }
    }
    Ok(())
}

/// Stated residues of c_k^(μ) and d_k^(ν) mod 2.
pub fn predicted_coeff_mod2(k: usize, idx: usize, is_c: bool, h_even: bool) -> bool {
    let delta = |x: usize| (x == k) as u8;
    let v = match (is_c, h_even) {
        (true, true) => delta(2 * idx),
        (false, true) => delta(2 * idx + 1),
        (true, false) if idx % 2 == 1 => delta(2 * idx) + delta(2 * idx + 1),
        (true, false) => delta(2 * idx) + delta(2 * idx + 2) + delta(2 * idx + 3),
        (false, false) if idx % 2 == 1 => delta(2 * idx + 1),
        (false, false) => delta(2 * idx + 1) + delta(2 * idx + 2),
    };
    v % 2 == 1
}

fn coefficients_mod2(level: Level) -> CheckResult {
    let kmax = level.pick(16, 40);
    let params = [(2u64, 2u64, 1u64), (6, 4, 3), (4, 2, 1), (1, 1, 1), (3, 1, 3), (5, 3, 1)];
    for (h, a, b) in params {
        let hp = HParams::new(h, a, b).unwrap();
        let tab = CoeffTable::new(hp, kmax);
        for k in 0..=kmax {
            for mu in 0..=k / 2 {
                let got = tab.c(k, mu).unwrap().is_odd();
                ensure(got == predicted_coeff_mod2(k, mu, true, hp.h_even()), || format!("c_{k}^{mu} H={hp:?}"))?;
            }
            if k >= 1 {
                for nu in 0..=(k - 1) / 2 {
                    let got = tab.d(k, nu).unwrap().is_odd();
                    ensure(got == predicted_coeff_mod2(k, nu, false, hp.h_even()), || format!("d_{k}^{nu} H={hp:?}"))?;
                }
            }
        }
    }
    Ok(())
}

fn log_derivatives(level: Level) -> CheckResult {
    let order = level.pick(12, 20);
    for hp in sample_hparams() {
        let f0 = lift(wreath::f_series(0, 3, hp, order + 5))?;
        let s = lift(wreath::s_series(3, hp, order + 5))?;
        for nu in 0..=4 {
            let direct = lift(wreath::logderiv(&f0, nu, hp.h()))?;
            let bell = wreath::faa_di_bruno(&s, nu, hp.h());
            ensure(direct.agrees_to(&bell, order), || format!("H={hp:?} nu={nu}"))?;
            let ints = direct.to_ints().ok_or_else(|| format!("fractional at H={hp:?} nu={nu}"))?;
            if hp.h_even() {
                let spow = s.pow(nu as u32).to_ints().unwrap();
                for i in 0..=order {
                    ensure(ints[i].is_odd() == spow[i].is_odd(), || format!("mod 2 H={hp:?} nu={nu} i={i}"))?;
                }
            }
        }
    }
    Ok(())
}

/// 𝓢 mod 2 from the exact counts, as a GF(2) polynomial up to z^order.
pub fn s_series_mod2(q: u64, hp: HParams, order: usize) -> crate::error::Result<PolyBit> {
    let s = wreath::s_general_seq(q, hp, order + 1)?;
    let exps: Vec<usize> = (0..=order).filter(|&i| s[i + 1].is_odd()).collect();
    Ok(PolyBit::from_exponents(&exps))
}

/// z + 𝓢 + z^(3q−2) 𝓢^(q−1) mod 2, truncated.
pub fn functional_residual(q: u64, s: &PolyBit, order: usize) -> PolyBit {
    let lhs = &(&PolyBit::monomial(1) + s) + &s.pow(q as u32 - 1).shift(3 * q as usize - 2);
    lhs.truncate(order)
}

fn functional_equation_mod2(level: Level) -> CheckResult {
    let order = level.pick(12, 30);
    for q in [3u64, 5] {
        for hp in [HParams::new(2, 2, 1).unwrap(), HParams::new(6, 4, 3).unwrap()] {
            let s = lift(s_series_mod2(q, hp, order))?;
            ensure(functional_residual(q, &s, order).is_zero(), || format!("q={q} H={hp:?}"))?;
            for e in 0..=order as u64 {
                let n = wreath::index_of_exponent(e);
                ensure(
                    s.coeff(e as usize) == wreath::shat_mod2_coeff(q, n).is_odd(),
                    || format!("explicit coefficient q={q} n={n}"),
                )?;
            }
        }
    }
    Ok(())
}

pub fn displayed_delta_13() -> Vec<Vec<Vec<usize>>> {
    let mut m = vec![vec![vec![]; 12]; 12];
    let entries: &[(usize, usize, &[usize])] = &[
        (0, 0, &[0]),
        (1, 0, &[0]), (1, 6, &[18]),
        (2, 0, &[0, 1]), (2, 1, &[1]), (2, 6, &[19]),
        (3, 0, &[1]), (3, 1, &[2, 3]), (3, 7, &[21]),
        (4, 2, &[4]),
        (5, 2, &[6]), (5, 8, &[24]),
        (6, 2, &[6, 7]), (6, 3, &[7]), (6, 8, &[25]),
        (7, 2, &[7]), (7, 3, &[8, 9]), (7, 9, &[27]),
        (8, 4, &[10]),
        (9, 4, &[12]), (9, 10, &[30]),
        (10, 4, &[12, 13]), (10, 5, &[13]), (10, 10, &[31]),
        (11, 4, &[13]), (11, 5, &[14, 15]), (11, 11, &[33]),
    ];
    for &(i, j, e) in entries {
        m[i][j] = e.to_vec();
    }
    m
}

pub fn displayed_delta_11() -> Vec<Vec<Vec<usize>>> {
    let mut m = vec![vec![vec![]; 10]; 10];
    let entries: &[(usize, usize, &[usize])] = &[
        (0, 0, &[0]), (0, 4, &[15]),
        (1, 0, &[0]), (1, 5, &[15]),
        (2, 0, &[0, 1]), (2, 1, &[1]),
        (3, 0, &[1]), (3, 1, &[2, 3]), (3, 6, &[18]),
        (4, 2, &[4]), (4, 6, &[19]),
        (5, 2, &[6]), (5, 7, &[21]),
        (6, 2, &[6, 7]), (6, 3, &[7]),
        (7, 2, &[7]), (7, 3, &[8, 9]), (7, 8, &[24]),
        (8, 4, &[10]), (8, 8, &[25]),
        (9, 4, &[12]), (9, 9, &[27]),
    ];
    for &(i, j, e) in entries {
        m[i][j] = e.to_vec();
    }
    m
}

fn displayed_matrices(_: Level) -> CheckResult {
    let mut seen = BTreeSet::new();
    for (q, shown) in [(11u64, displayed_delta_11()), (13, displayed_delta_13())] {
        let m = lift(gf2::build_delta(q, HParams::trivial()))?;
        for (i, row) in shown.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                seen.insert(gf2::omega_case(q, i as u64, j as u64));
                ensure(*m.get(i, j) == PolyBit::from_exponents(e), || format!("q={q} entry ({i},{j})"))?;
            }
        }
    }
    let missing: Vec<OmegaCase> = OmegaCase::ALL.iter().copied().filter(|c| !seen.contains(c)).collect();
    ensure(missing.is_empty(), || format!("cases not exercised: {missing:?}"))
}

const DET_PRIMES: [u64; 5] = [3, 5, 7, 11, 13];

fn det_even(_: Level) -> CheckResult {
    for q in DET_PRIMES {
        for hp in [HParams::new(2, 2, 1).unwrap(), HParams::new(6, 4, 3).unwrap()] {
            let m = lift(gf2::build_delta(q, hp))?;
            ensure(gf2::det_gf2(&m) == gf2::predicted_det(q, true), || format!("det q={q} H={hp:?}"))?;
            for kappa in 0..=q - 2 {
                let got = gf2::minor_gf2(&m, kappa as usize, 0);
                ensure(got == gf2::predicted_minor(q, kappa, true), || format!("minor q={q} kappa={kappa}: {got}"))?;
            }
        }
    }
    Ok(())
}

fn det_odd(_: Level) -> CheckResult {
    for q in DET_PRIMES {
        let m = lift(gf2::build_delta(q, HParams::trivial()))?;
        let got = gf2::det_gf2(&m);
        ensure(got == gf2::predicted_det(q, false), || format!("det q={q}: {got}"))?;
    }
    Ok(())
}

fn minors_odd(_: Level) -> CheckResult {
    let mut bad = Vec::new();
    for q in DET_PRIMES {
        let m = lift(gf2::build_delta(q, HParams::trivial()))?;
        for kappa in 0..=q - 2 {
            let got = gf2::minor_gf2(&m, kappa as usize, 0);
            let want = gf2::predicted_minor(q, kappa, false);
            if got != want {
                bad.push(format!("q={q} kappa={kappa}: computed {got}, stated {want}"));
            }
        }
    }
    ensure(bad.is_empty(), || bad.join("; "))
}

fn index_parity(level: Level) -> CheckResult {
    let nmax = level.pick(24, 30);
    let cells: Vec<(u64, u64)> = [3u64, 5].iter().flat_map(|&q| (1..=nmax).map(move |n| (q, n))).collect();
    let results = Exec::default().map(&cells, |&(q, n)| -> CheckResult {
        let mut c = Census::new();
        let s = lift(c.s_total(q, n))?;
        ensure(Parity::of(&s) == lift(parity::sq_parity(q, n))?.parity, || format!("s q={q} n={n}"))?;
        let nn = c.n_count(q, n);
        ensure(Parity::of(&nn) == lift(parity::nq_parity(q, n))?.parity, || format!("N q={q} n={n}"))
    });
    results.into_iter().collect()
}

fn fermat_forms(level: Level) -> CheckResult {
    for q in [3u64, 5, 17] {
        for n in 1..=level.pick(2_000, 20_000) {
            ensure(
                lift(parity::sq_parity(q, n))?.parity == lift(parity::sq_parity_fermat(q, n))?,
                || format!("s q={q} n={n}"),
            )?;
            ensure(
                lift(parity::nq_parity(q, n))?.parity == lift(parity::nq_parity_fermat(q, n))?,
                || format!("N q={q} n={n}"),
            )?;
        }
    }
    Ok(())
}

fn tree_parity(level: Level) -> CheckResult {
    let mut c = Census::new();
    for q in [3u64, 5] {
        for k in 1..=level.pick(6, 8) {
            let v = lift(c.m_core(q, k, k - 1))? / arith::factorial(k - 1);
            ensure(v.is_odd() == lift(parity::tree_case_parity(q, k))?, || format!("q={q} k={k}"))?;
            let shifted = arith::binom_mod2((q - 1) * k + 1, k - 1).unwrap().is_odd();
            ensure(v.is_odd() == shifted, || format!("binomial q={q} k={k}"))?;
        }
    }
    Ok(())
}

fn shifted_binomials(level: Level) -> CheckResult {
    for lambda in 1..=4u32 {
        for k in 1..=level.pick(128, 512u64) {
            let direct = arith::binom_mod2((1 << lambda) * k + 1, k - 1).unwrap().is_odd();
            ensure(direct == lift(parity::binom_shift_parity(lambda, k))?, || format!("lambda={lambda} k={k}"))?;
        }
    }
    Ok(())
}

fn lifted_vs_reduction(level: Level) -> CheckResult {
    let mut c = Census::new();
    let (dmax, rmax) = level.pick((10, 12), (15, 24));
    for q in [3u64, 5] {
        for h_even in [false, true] {
            for d in 1..=dmax {
                for r in 1..=rmax {
                    let n = d * r;
                    let fast = parity::lift_component(q, d, n, h_even).is_some();
                    let slow = lift(parity::reduction_parity(&mut c, q, d, n, h_even))?.is_odd();
                    ensure(fast == slow, || format!("q={q} d={d} n={n} h_even={h_even}"))?;
                }
            }
        }
    }
    Ok(())
}

pub const LIST_625_ODD: [u64; 41] = [
    1, 2, 13, 26, 29, 58, 61, 65, 122, 125, 130, 145, 250, 253, 290, 305, 325, 506, 509, 610, 625,
    650, 725, 1018, 1021, 1250, 1265, 1450, 1525, 1625, 2042, 2045, 2530, 2545, 3050, 3250, 3625,
    4090, 4093, 5090, 5105,
];

pub const LIST_625_EVEN: [u64; 19] = [
    2, 26, 58, 122, 130, 250, 290, 506, 610, 650, 1018, 1250, 1450, 2042, 2530, 3050, 3250, 4090,
    5090,
];

fn odd_indices(q: u64, m: u64, n_max: u64, h_even: bool) -> std::result::Result<Vec<u64>, String> {
    let v = lift(parity::lift_parity_range(q, m, n_max, h_even, Exec::default()))?;
    Ok(v.iter().enumerate().filter(|(_, x)| x.parity.is_odd()).map(|(i, _)| i as u64 + 1).collect())
}

fn lists_625(_: Level) -> CheckResult {
    ensure(odd_indices(3, 625, 6250, false)? == LIST_625_ODD, || "odd |H| list".into())?;
    ensure(odd_indices(3, 625, 6250, true)? == LIST_625_EVEN, || "even |H| list".into())
}

fn fermat_agreement(level: Level) -> CheckResult {
    for h_even in [false, true] {
        for n in 6251..=level.pick(8_000, 20_000) {
            let a = lift(parity::fermat_bed(3, 625, n, h_even))?.parity;
            let b = lift(parity::lift_parity(3, 625, n, h_even))?.parity;
            ensure(a == b, || format!("m=625 n={n} h_even={h_even}"))?;
        }
    }
    for q in [3u64, 5, 17] {
        for m in 1..=level.pick(10, 30) {
            for h_even in [false, true] {
                if h_even && m % 2 == 0 {
                    continue;
                }
                let t = parity::fermat_threshold(q, m);
                for n in t..t + level.pick(500, 3000) {
                    let a = lift(parity::fermat_bed(q, m, n, h_even))?.parity;
                    let b = lift(parity::lift_parity(q, m, n, h_even))?.parity;
                    ensure(a == b, || format!("q={q} m={m} n={n} h_even={h_even}"))?;
                }
            }
        }
    }
    Ok(())
}

pub fn residue_list(q: u64) -> (u64, &'static [u64]) {
    match q {
        3 => (24, &[7, 17]),
        5 => (40, &[7, 11, 17, 19, 21, 23, 29, 33]),
        17 => (
            136,
            &[
                7, 13, 19, 21, 23, 31, 35, 39, 41, 43, 53, 57, 59, 63, 65, 67, 69, 71, 73, 77, 79, 83,
                93, 95, 97, 105, 113, 115, 117, 123, 125, 129,
            ],
        ),
        _ => panic!("no residue list for q = {q}"),
    }
}

fn residue_classes(level: Level) -> CheckResult {
    for q in [3u64, 5, 17] {
        let (modulus, classes) = residue_list(q);
        for p in 3..level.pick(2_000, 10_000) {
            if !arith::is_odd_prime(p) || (2 * q * (q - 1)) % p == 0 {
                continue;
            }
            if classes.contains(&(p % modulus)) {
                ensure(lift(parity::cond_cq(q, p))?, || format!("q={q} p={p}"))?;
            }
        }
    }
    Ok(())
}
