//! Brute-force census of transitive permutation representations.
//!
//! For each number m2 of q-cycles, y is fixed to the canonical element whose
//! cycles are (0 1 .. q−1), (q .. 2q−1), ... and every involution x on
//! {0, .., n−1} is tried. Pairs with ⟨x, y⟩ transitive are weighted by the
//! size of the conjugacy class of y, and the total over a type divided by
//! (n−1)! is the number of subgroups of that type.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::arith::{self, Nat};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::types::{kurosh_type, KurType, RepType, TypeCensus};
use crate::wreath::HParams;

pub const DEFAULT_BUDGET: u64 = 100_000_000;
pub const BUDGET_ENV: &str = "HECKE_BUDGET";

/// The search budget, from `HECKE_BUDGET` when set and parseable.
pub fn budget_from_env() -> u64 {
    std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

/// Raw tallies for one representation type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepTally {
    pub rep: RepType,
    /// Involutions x making ⟨x, y⟩ transitive for the canonical y.
    pub graphs: Nat,
    /// Transitive pairs (x, y) over the whole conjugacy class of y.
    pub pairs: Nat,
}

/// Number of (x, y) configurations the search visits.
pub fn search_size(q: u64, n: u64) -> Nat {
    arith::involutions(n as i64) * Nat::from(n / q + 1)
}

fn check_budget(q: u64, n: u64, budget: u64) -> Result<()> {
    let size = search_size(q, n);
    if size > Nat::from(budget) {
        return Err(Error::Budget { estimated: size.to_string(), budget });
    }
    Ok(())
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn find(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            self.parent[a] = self.parent[self.parent[a]];
            a = self.parent[a];
        }
        a
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// Counts transitive involutions by number of 2-cycles, for one canonical y
/// and one choice for the image of point 0.
struct Walker<'a> {
    n: usize,
    y_parent: &'a [usize],
    y_components: usize,
    image: Vec<usize>,
    counts: Vec<u64>,
}

const UNSET: usize = usize::MAX;

impl Walker<'_> {
    fn leaf(&mut self) {
        let mut dsu = Dsu { parent: self.y_parent.to_vec() };
        let mut components = self.y_components;
        let mut m1 = 0;
        for i in 0..self.n {
            let j = self.image[i];
            if j > i {
                m1 += 1;
                if dsu.union(i, j) {
                    components -= 1;
                }
            }
        }
        if components == 1 {
            self.counts[m1] += 1;
        }
    }

    fn walk(&mut self) {
        let Some(i) = (0..self.n).find(|&i| self.image[i] == UNSET) else {
            self.leaf();
            return;
        };
        self.image[i] = i;
        self.walk();
        for j in i + 1..self.n {
            if self.image[j] == UNSET {
                self.image[i] = j;
                self.image[j] = i;
                self.walk();
                self.image[j] = UNSET;
            }
        }
        self.image[i] = UNSET;
    }
}

fn canonical_y_dsu(q: usize, n: usize, m2: usize) -> (Vec<usize>, usize) {
    let mut parent: Vec<usize> = (0..n).collect();
    for c in 0..m2 {
        for j in 1..q {
            parent[c * q + j] = c * q;
        }
    }
    (parent, n - m2 * (q - 1))
}

/// Tallies every representation type at index n with a non-zero count.
pub fn tally(q: u64, n: u64, budget: u64, exec: Exec) -> Result<Vec<RepTally>> {
    arith::check_odd_prime(q)?;
    if n == 0 {
        return crate::error::arg("index n must be positive");
    }
    check_budget(q, n, budget)?;
    let nn = n as usize;
    // work items: (m2, image of point 0)
    let mut items = Vec::new();
    for m2 in 0..=(n / q) as usize {
        for first in 0..nn {
            items.push((m2, first));
        }
    }
    let partial = exec.map(&items, |&(m2, first)| {
        let (y_parent, y_components) = canonical_y_dsu(q as usize, nn, m2);
        let mut w = Walker {
            n: nn,
            y_parent: &y_parent,
            y_components,
            image: vec![UNSET; nn],
            counts: vec![0; nn / 2 + 1],
        };
        w.image[0] = first;
        w.image[first] = 0;
        w.walk();
        (m2, w.counts)
    });
    let mut graphs: BTreeMap<RepType, u64> = BTreeMap::new();
    for (m2, counts) in partial {
        for (m1, c) in counts.into_iter().enumerate() {
            if c > 0 {
                *graphs.entry(RepType { m1: m1 as u64, m2: m2 as u64 }).or_default() += c;
            }
        }
    }
    Ok(graphs
        .into_iter()
        .map(|(rep, g)| {
            let class = arith::factorial(n)
                / (arith::pow(q, rep.m2) * arith::factorial(rep.m2) * arith::factorial(n - q * rep.m2));
            RepTally { rep, graphs: Nat::from(g), pairs: class * g }
        })
        .collect())
}

pub fn enumerate_types_with(q: u64, n: u64, budget: u64, exec: Exec) -> Result<TypeCensus> {
    let fact = arith::factorial(n - 1);
    let mut counts = BTreeMap::new();
    for t in tally(q, n, budget, exec)? {
        if !(&t.pairs % &fact).is_zero() {
            return Err(Error::Consistency(format!(
                "{} transitive pairs of type (m1,m2)=({},{}) at index {n} not divisible by {}!",
                t.pairs,
                t.rep.m1,
                t.rep.m2,
                n - 1
            )));
        }
        let kt = kurosh_type(q, n, t.rep).ok_or_else(|| {
            Error::Consistency(format!("transitive pair with impossible type {:?}", t.rep))
        })?;
        counts.insert(kt, &t.pairs / &fact);
    }
    Ok(TypeCensus { q, n, counts })
}

pub fn enumerate_types(q: u64, n: u64, budget: u64) -> Result<TypeCensus> {
    enumerate_types_with(q, n, budget, Exec::default())
}

pub fn oracle_s(q: u64, n: u64, budget: u64) -> Result<Nat> {
    Ok(enumerate_types(q, n, budget)?.total())
}

/// Subgroups with μ = 0.
pub fn oracle_m(q: u64, n: u64, budget: u64) -> Result<Nat> {
    Ok(enumerate_types(q, n, budget)?.total_where(|t| t.mu == 0))
}

/// Subgroups with λ = ν = 0.
pub fn oracle_n(q: u64, n: u64, budget: u64) -> Result<Nat> {
    Ok(enumerate_types(q, n, budget)?.total_where(|t| t.lambda == 0 && t.nu == 0))
}

/// Free subgroups, λ = μ = 0.
pub fn oracle_f(q: u64, n: u64, budget: u64) -> Result<Nat> {
    Ok(enumerate_types(q, n, budget)?.total_where(|t| t.lambda == 0 && t.mu == 0))
}

/// Σ over subgroups U of index n of |Hom(U, H)| = a^λ b^μ h^ν.
pub fn oracle_sh(q: u64, n: u64, hp: HParams, budget: u64) -> Result<Nat> {
    let census = enumerate_types(q, n, budget)?;
    Ok(census
        .counts
        .iter()
        .map(|(t, c)| c * hom_count(*t, hp))
        .sum())
}

pub fn hom_count(t: KurType, hp: HParams) -> Nat {
    arith::pow(hp.a(), t.lambda) * arith::pow(hp.b(), t.mu) * arith::pow(hp.h(), t.nu)
}

/// The (m1, m2) graph count for the canonical y; equals M_q(n; m1, m2).
pub fn oracle_graphs(q: u64, n: u64, rep: RepType, budget: u64) -> Result<Nat> {
    Ok(tally(q, n, budget, Exec::default())?
        .into_iter()
        .find(|t| t.rep == rep)
        .map(|t| t.graphs)
        .unwrap_or_default())
}

#[cfg(test)]
mod tests {
    use super::*;

    const B: u64 = DEFAULT_BUDGET;

    fn kt(lambda: u64, mu: u64, nu: u64) -> KurType {
        KurType { lambda, mu, nu }
    }

    #[test]
    fn small_indices() {
        let c = enumerate_types(3, 1, B).unwrap();
        assert_eq!(c.counts.len(), 1);
        assert_eq!(c.get(kt(1, 1, 0)), Nat::from(1u8));
        let c = enumerate_types(3, 2, B).unwrap();
        assert_eq!(c.counts.len(), 1);
        assert_eq!(c.get(kt(0, 2, 0)), Nat::from(1u8));
        assert_eq!(oracle_s(3, 3, B).unwrap(), Nat::from(4u8));
        assert_eq!(oracle_m(3, 3, B).unwrap(), Nat::from(4u8));
        assert_eq!(oracle_n(3, 2, B).unwrap(), Nat::from(1u8));
        assert_eq!(oracle_m(3, 4, B).unwrap(), Nat::from(0u8));
    }

    #[test]
    fn twisted_counts_at_small_index() {
        let hp = HParams::new(6, 4, 3).unwrap();
        assert_eq!(oracle_sh(3, 2, hp, B).unwrap(), Nat::from(9u8));
        let hp = HParams::new(2, 2, 1).unwrap();
        assert_eq!(oracle_sh(3, 1, hp, B).unwrap(), Nat::from(2u8));
    }

    #[test]
    fn budget_is_enforced() {
        let err = enumerate_types(3, 12, 1000).unwrap_err();
        match err {
            Error::Budget { estimated, budget } => {
                assert_eq!(budget, 1000);
                assert_eq!(estimated, search_size(3, 12).to_string());
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn sequential_and_parallel_agree() {
        for n in 1..=9 {
            let a = enumerate_types_with(3, n, B, Exec::Sequential).unwrap();
            let b = enumerate_types_with(3, n, B, Exec::Parallel).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn rejects_composite_q() {
        assert!(enumerate_types(9, 3, B).is_err());
    }
}
